#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bsv/dispersion.hpp"
#include "bsv/units.hpp"

namespace bsv {

// Uniform axis symmetric about `center`: w_j + w_{N-1-j} = 2 center.
class FrequencyGrid {
 public:
  FrequencyGrid() = default;
  static FrequencyGrid symmetric(double center, std::size_t points, double half_span);

  std::size_t size() const { return n_; }
  double center() const { return center_; }
  double half_span() const { return half_span_; }
  double step() const { return step_; }
  double omega(std::size_t j) const { return center_ + (static_cast<double>(j) - 0.5 * (n_ - 1)) * step_; }
  double wavelength_nm(std::size_t j) const { return wavelength_nm_from_omega(omega(j)); }
  std::size_t mirror(std::size_t j) const { return n_ - 1 - j; }
  std::vector<double> omegas() const;
  // Sums w_j + w_k for m = j + k in [0, 2N - 2].
  double pair_sum(std::size_t m) const { return 2.0 * center_ + (static_cast<double>(m) - (n_ - 1)) * step_; }
  bool operator==(const FrequencyGrid&) const = default;

 private:
  double center_ = 0.0;
  double half_span_ = 0.0;
  double step_ = 0.0;
  std::size_t n_ = 0;
};

struct PumpConfig {
  Wavelength wavelength;
  double tau_fs = 0.0;

  static PumpConfig from_intensity_fwhm(Wavelength w, double fwhm_fs);
  double omega() const { return omega_from_wavelength(wavelength); }
  double bandwidth() const { return 1.0 / tau_fs; }                          // Omega, rad/fs
  double intensity_fwhm_fs() const { return 2.0 * std::sqrt(std::log(2.0)) * tau_fs; }
};

enum class TpaNormalization { Raw, UnitL2 };

using ComplexMatrix = Eigen::MatrixXcd;

// F(w_s, w_i): row index = signal, column index = idler.
class JointSpectralAmplitude {
 public:
  JointSpectralAmplitude(FrequencyGrid grid, ComplexMatrix values, TpaNormalization normalization);

  // Scales `values` so that sum |F|^2 dw^2 = 1.
  static JointSpectralAmplitude normalized(FrequencyGrid grid, ComplexMatrix values);
  template <class Fn>
  static JointSpectralAmplitude from_function(const FrequencyGrid& grid, Fn&& fn) {
    ComplexMatrix m(grid.size(), grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k)
      for (std::size_t j = 0; j < grid.size(); ++j) m(j, k) = fn(grid.omega(j), grid.omega(k));
    return normalized(grid, std::move(m));
  }

  const FrequencyGrid& grid() const { return grid_; }
  const ComplexMatrix& values() const { return values_; }
  TpaNormalization normalization() const { return normalization_; }
  std::complex<double> operator()(std::size_t j, std::size_t k) const { return values_(j, k); }
  double norm_squared() const;  // sum |F|^2 dw^2
  std::vector<double> signal_marginal() const;

 private:
  FrequencyGrid grid_;
  ComplexMatrix values_;
  TpaNormalization normalization_;
};

struct InterferometerOptions {
  double phase_offset = 0.0;       // added to the cosine argument, rad
  bool force_unit_cosine = false;  // test hook: replace cos(T) exp(-iT) by exp(-iT)
};

// Unnormalized matrices; the builders below normalize them.
ComplexMatrix single_crystal_tpa_values(const FrequencyGrid& grid, const PumpConfig& pump,
                                        const PhaseMatchedCrystal& crystal, Length crystal_length);
ComplexMatrix interferometer_tpa_values(const FrequencyGrid& grid, const PumpConfig& pump,
                                        const PhaseMatchedCrystal& crystal, const Geometry& geometry,
                                        const InterferometerMedia& media, const InterferometerOptions& options = {});

JointSpectralAmplitude build_single_crystal_tpa(const FrequencyGrid& grid, const PumpConfig& pump,
                                                const PhaseMatchedCrystal& crystal, Length crystal_length);
JointSpectralAmplitude build_interferometer_tpa(const FrequencyGrid& grid, const PumpConfig& pump,
                                                const PhaseMatchedCrystal& crystal, const Geometry& geometry,
                                                const InterferometerMedia& media,
                                                const InterferometerOptions& options = {});

// Offset in [-pi, pi] that brings the cosine argument at (lock, w_p - lock)
// to 0 mod 2 pi.
double phase_lock(const PumpConfig& pump, const PhaseMatchedCrystal& crystal, const Geometry& geometry,
                  const InterferometerMedia& media, double lock_omega);

// Fraction of peak marginal intensity left at the outermost grid points.
double edge_fraction(const JointSpectralAmplitude& tpa);

// Binary dump: "BSVTPA1\n", uint64 header length, JSON header, then N*N
// complex doubles (re, im), row-major over (signal, idler), little-endian,
// frequencies ascending.
void write_tpa(const std::filesystem::path& path, const JointSpectralAmplitude& tpa,
               const std::map<std::string, std::string>& metadata = {});
JointSpectralAmplitude read_tpa(const std::filesystem::path& path, std::map<std::string, std::string>* metadata = nullptr);

}  // namespace bsv
