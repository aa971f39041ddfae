#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bsv/schmidt.hpp"

namespace bsv {

enum class SpectrumScale {
  ModeWeights,     // sum |u_n|^2 Lambda_n, integrates to 1
  PeakNormalized,  // same shape, max = 1
  Photons,         // sum |u_n|^2 sinh^2 r_n, photons per rad/fs
};

struct Spectrum {
  FrequencyGrid grid;
  std::vector<double> values;
  SpectrumScale scale = SpectrumScale::ModeWeights;

  double integral() const;  // sum values * dw
};

// Throws ConsistencyError when the gain state was derived from another spectrum.
Spectrum spectrum(const SchmidtDecomposition& d, const GainState& gain, SpectrumScale scale);

struct SpectralBand {
  double lower = 0.0;  // rad/fs
  double upper = 0.0;  // rad/fs

  static SpectralBand from_wavelengths_nm(double a_nm, double b_nm);
  bool overlaps(const SpectralBand& other) const { return lower < other.upper && other.lower < upper; }
  // Grid points with lower <= w < upper.
  std::vector<std::size_t> indices(const FrequencyGrid& g) const;
};

struct PeakPolicy {
  double threshold = 0.1;   // fraction of the global maximum
  double merge_gap = 0.005; // rad/fs; clusters closer than this are one peak
};

struct Peak {
  std::size_t index = 0;    // grid index of the local maximum
  double omega = 0.0;
  double wavelength_nm = 0.0;
  double height = 0.0;
  double fwhm_rad_per_fs = 0.0;
  double fwhm_nm = 0.0;
  double lower_half = 0.0;  // interpolated half-maximum crossings, rad/fs
  double upper_half = 0.0;
  std::size_t first = 0;    // cluster extent above threshold
  std::size_t last = 0;
};

struct PeakAnalysis {
  std::vector<Peak> peaks;  // ascending in omega
  std::optional<double> separation_rad_per_fs;
  std::optional<double> separation_nm;
  // Grid index of the minimum between the two highest clusters.
  std::optional<std::size_t> split_index;
};

PeakAnalysis find_peaks(const Spectrum& s, const PeakPolicy& policy = {});

// Width of the highest peak, outermost half-maximum crossings.
// Throws EdgeError when a crossing is not inside the grid.
Peak fwhm(const Spectrum& s, const PeakPolicy& policy = {});

enum class BeamKind { Degenerate, NonDegenerate };

// 1 + 2/K; the non-degenerate counterpart is not implemented.
double g2_integral(const GainState& gain, BeamKind kind = BeamKind::Degenerate);

// Second moments of the Schmidt-mode operators A_n of a Gaussian state:
// <A_n^dag A_m> = delta_nm occupation_n, <A_n A_m> = delta_nm anomalous_n.
struct ModeMoments {
  Eigen::VectorXd occupation;
  Eigen::VectorXd anomalous;
  std::uint64_t lambda_fingerprint = 0;

  static ModeMoments squeezed(const GainState& g);  // sinh^2 r, sinh r cosh r
  static ModeMoments thermal(const Eigen::VectorXd& mean, std::uint64_t fingerprint);
};

struct BandMoments {
  double mean = 0.0;
  double variance = 0.0;
};

struct BandPairMoments {
  BandMoments a;
  BandMoments b;
  double covariance = 0.0;
  double difference_variance = 0.0;  // Var(N_a - N_b)
};

BandMoments band_moments(const SchmidtDecomposition& d, const GainState& gain, const SpectralBand& band);
BandMoments band_moments(const SchmidtDecomposition& d, const ModeMoments& m, const SpectralBand& band);
BandPairMoments band_pair_moments(const SchmidtDecomposition& d, const ModeMoments& m, const SpectralBand& a,
                                  const SpectralBand& b);

// Var(N_s - N_i) / (<N_s> + <N_i>).
double nrf(const SchmidtDecomposition& d, const GainState& gain, const SpectralBand& band_s,
           const SpectralBand& band_i);
double nrf(const SchmidtDecomposition& d, const ModeMoments& m, const SpectralBand& band_s,
           const SpectralBand& band_i);

}  // namespace bsv
