#include <algorithm>
#include <cmath>
#include <sstream>

#include "bsv/errors.hpp"
#include "bsv/kernels/kernels.hpp"
#include "bsv/observables.hpp"

namespace bsv {

double Spectrum::integral() const {
  double acc = 0.0;
  for (double v : values) acc += v;
  return acc * grid.step();
}

Spectrum spectrum(const SchmidtDecomposition& d, const GainState& gain, SpectrumScale scale) {
  if (gain.lambda_fingerprint != d.fingerprint() ||
      static_cast<std::size_t>(gain.weights.size()) != d.rank_kept)
    throw ConsistencyError("gain state was not derived from this Schmidt decomposition");
  Spectrum s{d.grid, std::vector<double>(d.grid.size(), 0.0), scale};
  const Eigen::VectorXd& w = scale == SpectrumScale::Photons ? gain.mean_photons : gain.weights;
  for (std::size_t n = 0; n < d.rank_kept; ++n) {
    const auto c = static_cast<Eigen::Index>(n);
    kernels::accumulate_intensity(s.values, {d.modes_s.col(c).data(), d.grid.size()}, w[c]);
  }
  if (scale == SpectrumScale::PeakNormalized) {
    const double peak = *std::max_element(s.values.begin(), s.values.end());
    if (peak > 0.0)
      for (double& v : s.values) v /= peak;
  }
  return s;
}

SpectralBand SpectralBand::from_wavelengths_nm(double a_nm, double b_nm) {
  const double wa = omega_from_wavelength(Wavelength::from_nm(a_nm));
  const double wb = omega_from_wavelength(Wavelength::from_nm(b_nm));
  return {std::min(wa, wb), std::max(wa, wb)};
}

std::vector<std::size_t> SpectralBand::indices(const FrequencyGrid& g) const {
  if (!(lower < upper)) throw PreconditionError("spectral band needs lower < upper");
  const double half = 0.5 * g.step();
  if (lower < g.omega(0) - half || upper > g.omega(g.size() - 1) + half) {
    std::ostringstream os;
    os << "band [" << lower << ", " << upper << "] rad/fs lies outside the grid [" << g.omega(0) << ", "
       << g.omega(g.size() - 1) << "] rad/fs";
    throw RangeError(os.str());
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double w = g.omega(j);
    if (w >= lower && w < upper) out.push_back(j);
  }
  return out;
}

double g2_integral(const GainState& gain, BeamKind kind) {
  if (kind != BeamKind::Degenerate)
    throw UnsupportedError("g2 is only implemented for the degenerate (single-beam) configuration");
  return 1.0 + 2.0 / schmidt_number(gain.weights);
}

}  // namespace bsv
