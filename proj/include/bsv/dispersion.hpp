#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bsv/units.hpp"

namespace bsv {

enum class FormulaVariant { Constant, Schott, Eimerl, PeckReeder };

std::string_view variant_name(FormulaVariant v);

struct ValidRange {
  double lo_um = 0.0;
  double hi_um = 0.0;
  bool contains(double um) const { return um >= lo_um && um <= hi_um; }
};

struct Material {
  std::string name;
  FormulaVariant variant = FormulaVariant::Constant;
  std::vector<double> coefficients;
  std::vector<std::string> coefficient_text;  // as stored in the table
  ValidRange valid_range;
  std::string source;

  static Material vacuum();
};

class MaterialTable {
 public:
  static MaterialTable parse(std::string_view json_text);
  static MaterialTable load(const std::filesystem::path& path);
  // Table shipped with the sources (data/materials.json).
  static const MaterialTable& bundled();

  const Material& at(std::string_view name) const;
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;
  const std::string& version() const { return version_; }

 private:
  std::string version_;
  std::map<std::string, Material, std::less<>> materials_;
};

// n(lambda); throws RangeError outside the material's valid range.
double refractive_index(const Material& m, Wavelength w);

// k = n(w) w / c in rad/um, omega in rad/fs.
double wavevector(const Material& m, double omega);

struct DerivativeStep {
  double relative = 1e-6;  // central-difference step as a fraction of omega
};

// dk/domega in fs/um.
double inverse_group_velocity(const Material& m, double omega, DerivativeStep step = {});
// v_g = (dk/domega)^-1 in um/fs.
double group_velocity(const Material& m, double omega, DerivativeStep step = {});
// d^2k/domega^2 in fs^2/um.
double group_velocity_dispersion(const Material& m, double omega, DerivativeStep step = {});

// Collinear type-I crystal: pump extraordinary at angle theta to the optic
// axis, signal and idler ordinary.
struct PhaseMatchedCrystal {
  Material ordinary;
  Material extraordinary;
  double theta_rad = 0.0;

  double pump_index(Wavelength w) const;
  double pump_wavevector(double omega) const;
  double signal_wavevector(double omega) const;
  double idler_wavevector(double omega) const { return signal_wavevector(omega); }
};

// Angle at which k_p(omega_p) = 2 k_o(omega_p / 2).
PhaseMatchedCrystal phase_match_type1(const Material& ordinary, const Material& extraordinary, Wavelength pump);

// Delta k = k_p(ws + wi) - k_s(ws) - k_i(wi), rad/um.
double crystal_mismatch(double omega_s, double omega_i, const PhaseMatchedCrystal& crystal);

struct Geometry {
  Length crystal_length;
  Length gvd_length;
  Length air_gap;
  Length pump_path;

  // Throws PreconditionError naming the first negative length.
  void validate() const;
};

struct InterferometerMedia {
  Material air = Material::vacuum();
  Material gvd = Material::vacuum();
};

// phi = (Delta k_a d_a + k_p^a d0 - k_s^g d - k_i^g d) / 2, rad.
double interferometer_phase(double omega_s, double omega_i, const Geometry& g, const InterferometerMedia& media);

// Full argument of the interferometer cosine: Delta k L / 2 + phi.
double cosine_argument(double omega_s, double omega_i, const PhaseMatchedCrystal& crystal, const Geometry& g,
                       const InterferometerMedia& media);

struct GroupDelayOptions {
  bool include_crystal = true;  // differentiate Delta k L/2 + phi rather than phi alone
  DerivativeStep step;
  Length max_pump_path = Length::from_cm(1000.0);
  double tolerance_um = 1e-6;
};

// d/domega_s of the selected argument at (omega_s, omega_p - omega_s), fs.
double group_delay_mismatch(double omega_s, double omega_p, const PhaseMatchedCrystal& crystal, const Geometry& g,
                            const InterferometerMedia& media, const GroupDelayOptions& options = {});

// Pump path d0 in [0, max_pump_path] that zeroes group_delay_mismatch at
// target_omega. Throws NoRootError with the searched interval.
Length find_pump_path(double target_omega, double omega_p, const PhaseMatchedCrystal& crystal, Geometry g,
                      const InterferometerMedia& media, const GroupDelayOptions& options = {});

}  // namespace bsv
