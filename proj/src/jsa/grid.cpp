#include <cmath>

#include "bsv/errors.hpp"
#include "bsv/jsa.hpp"
#include "bsv/kernels/kernels.hpp"

namespace bsv {

FrequencyGrid FrequencyGrid::symmetric(double center, std::size_t points, double half_span) {
  if (points < 2) throw PreconditionError("frequency grid needs at least 2 points");
  if (!(half_span > 0.0) || !(center > half_span))
    throw PreconditionError("frequency grid half-span must be positive and smaller than its center");
  FrequencyGrid g;
  g.center_ = center;
  g.half_span_ = half_span;
  g.n_ = points;
  g.step_ = 2.0 * half_span / static_cast<double>(points - 1);
  return g;
}

std::vector<double> FrequencyGrid::omegas() const {
  std::vector<double> out(n_);
  for (std::size_t j = 0; j < n_; ++j) out[j] = omega(j);
  return out;
}

PumpConfig PumpConfig::from_intensity_fwhm(Wavelength w, double fwhm_fs) {
  return PumpConfig{w, fwhm_fs / (2.0 * std::sqrt(std::log(2.0)))};
}

JointSpectralAmplitude::JointSpectralAmplitude(FrequencyGrid grid, ComplexMatrix values,
                                               TpaNormalization normalization)
    : grid_(grid), values_(std::move(values)), normalization_(normalization) {
  if (static_cast<std::size_t>(values_.rows()) != grid_.size() ||
      static_cast<std::size_t>(values_.cols()) != grid_.size())
    throw PreconditionError("TPA matrix shape does not match its grid");
}

JointSpectralAmplitude JointSpectralAmplitude::normalized(FrequencyGrid grid, ComplexMatrix values) {
  const std::span<std::complex<double>> all(values.data(), static_cast<std::size_t>(values.size()));
  const double sum = kernels::sum_squared_magnitude(all);
  if (!std::isfinite(sum)) throw NumericalError("TPA contains non-finite entries");
  if (!(sum > 0.0)) throw NumericalError("TPA vanishes on the grid; cannot normalize");
  kernels::scale(all, 1.0 / (std::sqrt(sum) * grid.step()));
  return JointSpectralAmplitude(grid, std::move(values), TpaNormalization::UnitL2);
}

double JointSpectralAmplitude::norm_squared() const {
  const std::span<const std::complex<double>> all(values_.data(), static_cast<std::size_t>(values_.size()));
  return kernels::sum_squared_magnitude(all) * grid_.step() * grid_.step();
}

std::vector<double> JointSpectralAmplitude::signal_marginal() const {
  std::vector<double> out(grid_.size(), 0.0);
  for (Eigen::Index k = 0; k < values_.cols(); ++k)
    kernels::accumulate_intensity(out, {values_.col(k).data(), grid_.size()}, grid_.step());
  return out;
}

double edge_fraction(const JointSpectralAmplitude& tpa) {
  const std::vector<double> m = tpa.signal_marginal();
  double peak = 0.0;
  for (double v : m) peak = std::max(peak, v);
  return peak > 0.0 ? std::max(m.front(), m.back()) / peak : 0.0;
}

}  // namespace bsv
