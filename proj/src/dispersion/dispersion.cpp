#include <cmath>
#include <cstdint>
#include <sstream>

#include <boost/math/tools/toms748_solve.hpp>

#include "bsv/dispersion.hpp"
#include "bsv/errors.hpp"

namespace bsv {
namespace {

std::string range_message(const Material& m, double um) {
  std::ostringstream os;
  os.precision(6);
  os << "refractive index of " << m.name << " requested at " << um << " um, outside its valid range ["
     << m.valid_range.lo_um << ", " << m.valid_range.hi_um << "] um";
  return os.str();
}

double index_squared(const Material& m, double l) {
  const auto& c = m.coefficients;
  const double l2 = l * l;
  switch (m.variant) {
    case FormulaVariant::Schott:
      return 1.0 + c[0] * l2 / (l2 - c[3]) + c[1] * l2 / (l2 - c[4]) + c[2] * l2 / (l2 - c[5]);
    case FormulaVariant::Eimerl:
      return c[0] + c[1] / (l2 - c[2]) - c[3] * l2;
    case FormulaVariant::Constant:
    case FormulaVariant::PeckReeder:
      break;
  }
  return 0.0;
}

}  // namespace

double refractive_index(const Material& m, Wavelength w) {
  if (!m.valid_range.contains(w.um)) throw RangeError(range_message(m, w.um));
  switch (m.variant) {
    case FormulaVariant::Constant:
      return m.coefficients[0];
    case FormulaVariant::PeckReeder: {
      const auto& c = m.coefficients;
      const double s2 = 1.0 / (w.um * w.um);
      return 1.0 + 1e-8 * (c[0] + c[1] / (c[2] - s2) + c[3] / (c[4] - s2));
    }
    case FormulaVariant::Schott:
    case FormulaVariant::Eimerl: {
      const double n2 = index_squared(m, w.um);
      if (!(n2 > 0.0) || !std::isfinite(n2))
        throw NumericalError("non-physical index for " + m.name + " at " + std::to_string(w.um) + " um");
      return std::sqrt(n2);
    }
  }
  return 1.0;
}

double wavevector(const Material& m, double omega) {
  return refractive_index(m, wavelength_from_omega(omega)) * omega / kSpeedOfLight;
}

double inverse_group_velocity(const Material& m, double omega, DerivativeStep step) {
  const double h = step.relative * omega;
  return (wavevector(m, omega + h) - wavevector(m, omega - h)) / (2.0 * h);
}

double group_velocity(const Material& m, double omega, DerivativeStep step) {
  return 1.0 / inverse_group_velocity(m, omega, step);
}

double group_velocity_dispersion(const Material& m, double omega, DerivativeStep step) {
  const double h = step.relative * omega;
  return (wavevector(m, omega + h) - 2.0 * wavevector(m, omega) + wavevector(m, omega - h)) / (h * h);
}

double PhaseMatchedCrystal::pump_index(Wavelength w) const {
  const double no = refractive_index(ordinary, w);
  const double ne = refractive_index(extraordinary, w);
  const double c = std::cos(theta_rad);
  const double s = std::sin(theta_rad);
  return 1.0 / std::sqrt(c * c / (no * no) + s * s / (ne * ne));
}

double PhaseMatchedCrystal::pump_wavevector(double omega) const {
  return pump_index(wavelength_from_omega(omega)) * omega / kSpeedOfLight;
}

double PhaseMatchedCrystal::signal_wavevector(double omega) const { return wavevector(ordinary, omega); }

PhaseMatchedCrystal phase_match_type1(const Material& ordinary, const Material& extraordinary, Wavelength pump) {
  const double target = refractive_index(ordinary, Wavelength{2.0 * pump.um});
  const double no = refractive_index(ordinary, pump);
  const double ne = refractive_index(extraordinary, pump);
  const double s2 = (1.0 / (target * target) - 1.0 / (no * no)) / (1.0 / (ne * ne) - 1.0 / (no * no));
  if (!(s2 >= 0.0 && s2 <= 1.0))
    throw NumericalError("no type-I phase-matching angle for " + ordinary.name + "/" + extraordinary.name +
                         " at pump " + std::to_string(pump.nm()) + " nm");
  return PhaseMatchedCrystal{ordinary, extraordinary, std::asin(std::sqrt(s2))};
}

double crystal_mismatch(double omega_s, double omega_i, const PhaseMatchedCrystal& crystal) {
  return crystal.pump_wavevector(omega_s + omega_i) - crystal.signal_wavevector(omega_s) -
         crystal.idler_wavevector(omega_i);
}

void Geometry::validate() const {
  const std::pair<const char*, double> fields[] = {{"crystal_length", crystal_length.um},
                                                   {"gvd_length", gvd_length.um},
                                                   {"air_gap", air_gap.um},
                                                   {"pump_path", pump_path.um}};
  for (const auto& [name, v] : fields)
    if (!(v >= 0.0) || !std::isfinite(v))
      throw PreconditionError(std::string("geometry.") + name + " must be a finite length >= 0");
}

double interferometer_phase(double omega_s, double omega_i, const Geometry& g, const InterferometerMedia& media) {
  double phi = 0.0;
  const double omega_p = omega_s + omega_i;
  const double air_path = g.air_gap.um + g.pump_path.um;
  if (air_path != 0.0) phi += wavevector(media.air, omega_p) * air_path;
  if (g.air_gap.um != 0.0) phi -= (wavevector(media.air, omega_s) + wavevector(media.air, omega_i)) * g.air_gap.um;
  if (g.gvd_length.um != 0.0)
    phi -= (wavevector(media.gvd, omega_s) + wavevector(media.gvd, omega_i)) * g.gvd_length.um;
  return 0.5 * phi;
}

double cosine_argument(double omega_s, double omega_i, const PhaseMatchedCrystal& crystal, const Geometry& g,
                       const InterferometerMedia& media) {
  return 0.5 * crystal_mismatch(omega_s, omega_i, crystal) * g.crystal_length.um +
         interferometer_phase(omega_s, omega_i, g, media);
}

double group_delay_mismatch(double omega_s, double omega_p, const PhaseMatchedCrystal& crystal, const Geometry& g,
                            const InterferometerMedia& media, const GroupDelayOptions& options) {
  const double omega_i = omega_p - omega_s;
  const double h = options.step.relative * omega_s;
  auto arg = [&](double ws) {
    return options.include_crystal ? cosine_argument(ws, omega_i, crystal, g, media)
                                   : interferometer_phase(ws, omega_i, g, media);
  };
  return (arg(omega_s + h) - arg(omega_s - h)) / (2.0 * h);
}

Length find_pump_path(double target_omega, double omega_p, const PhaseMatchedCrystal& crystal, Geometry g,
                      const InterferometerMedia& media, const GroupDelayOptions& options) {
  const double lo = 0.0;
  const double hi = options.max_pump_path.um;
  auto f = [&](double d0) {
    g.pump_path = Length{d0};
    return group_delay_mismatch(target_omega, omega_p, crystal, g, media, options);
  };
  const double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return Length{lo};
  if (f_hi == 0.0) return Length{hi};
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    std::ostringstream os;
    os << "no pump path zeroes the group-delay mismatch at " << wavelength_nm_from_omega(target_omega)
       << " nm within [" << Length{lo}.cm() << ", " << Length{hi}.cm() << "] cm (mismatch " << f_lo << " .. " << f_hi
       << " fs)";
    throw NoRootError(os.str(), Length{lo}.cm(), Length{hi}.cm());
  }
  std::uintmax_t iterations = 200;
  const double tol_um = options.tolerance_um;
  auto tol = [tol_um](double a, double b) { return std::abs(b - a) <= tol_um; };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, tol, iterations);
  return Length{0.5 * (a + b)};
}

}  // namespace bsv
