#pragma once

#include <numbers>

// Canonical internal units: angular frequency in rad/fs, lengths in um,
// wavevectors in rad/um. Millimetres, centimetres and nanometres only
// appear at configuration and report boundaries.
namespace bsv {

inline constexpr double kSpeedOfLight = 0.299792458;  // um/fs
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Wavelength {
  double um = 0.0;

  static constexpr Wavelength from_nm(double nm) { return {nm * 1e-3}; }
  static constexpr Wavelength from_um(double v) { return {v}; }
  constexpr double nm() const { return um * 1e3; }
};

struct Length {
  double um = 0.0;

  static constexpr Length from_um(double v) { return {v}; }
  static constexpr Length from_mm(double v) { return {v * 1e3}; }
  static constexpr Length from_cm(double v) { return {v * 1e4}; }
  constexpr double mm() const { return um * 1e-3; }
  constexpr double cm() const { return um * 1e-4; }
};

constexpr double omega_from_wavelength(Wavelength w) { return kTwoPi * kSpeedOfLight / w.um; }
constexpr Wavelength wavelength_from_omega(double omega) { return {kTwoPi * kSpeedOfLight / omega}; }
constexpr double wavelength_nm_from_omega(double omega) { return wavelength_from_omega(omega).nm(); }

}  // namespace bsv
