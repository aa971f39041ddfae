#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bsv/jsa.hpp"

namespace bsv {

struct Truncation {
  double tail = 1e-8;        // keep modes until cumulative lambda >= 1 - tail
  std::size_t max_rank = 0;  // 0: no cap
};

struct DecomposeOptions {
  Truncation truncation;
  double degeneracy_tolerance = 1e-3;  // |l_n - l_{n+1}| / l_n
  bool reflection_pairing = true;      // rotate degenerate subspaces onto reflection eigenvectors
};

// F(ws, wi) = sum_n sqrt(lambda_n) u_n(ws) v_n(wi), modes orthonormal under
// the dw-weighted inner product. Only the kept modes are stored; the full
// eigenvalue list is retained for diagnostics.
struct SchmidtDecomposition {
  FrequencyGrid grid;
  Eigen::VectorXd lambdas;       // kept, descending
  Eigen::VectorXd all_lambdas;   // full rank, sums to 1
  ComplexMatrix modes_s;         // N x rank_kept, column n = u_n
  ComplexMatrix modes_i;         // N x rank_kept, column n = v_n
  std::size_t rank_kept = 0;
  std::vector<double> parity;    // <u_n, P u_n> dw, P: w -> 2 center - w
  // Groups of near-degenerate modes rotated by the reflection convention,
  // as half-open index ranges, with the largest relative lambda spread.
  std::vector<std::pair<std::size_t, std::size_t>> paired_groups;
  double pairing_spread = 0.0;

  std::uint64_t fingerprint() const;
  ComplexMatrix reconstruct() const;

  // Builds a decomposition from explicitly supplied modes (columns), checking
  // orthonormality to `tolerance`. Used for toy systems and test doubles.
  static SchmidtDecomposition from_modes(const FrequencyGrid& grid, const Eigen::VectorXd& lambdas,
                                         const ComplexMatrix& modes_s, const ComplexMatrix& modes_i,
                                         double tolerance = 1e-10);
};

std::uint64_t lambda_fingerprint(const Eigen::VectorXd& lambdas);

struct SvdResult {
  Eigen::VectorXd singular_values;
  ComplexMatrix u;   // m x k
  ComplexMatrix vh;  // k x n
};

// Thin SVD of a dense complex matrix (LAPACK divide and conquer).
SvdResult complex_svd(ComplexMatrix a, bool vectors = true);

SchmidtDecomposition decompose(const JointSpectralAmplitude& tpa, const DecomposeOptions& options = {});

// Squared singular values only; same normalization as decompose().lambdas.
Eigen::VectorXd schmidt_eigenvalues(const JointSpectralAmplitude& tpa);

enum class GainReference {
  LeadingMode,  // r_n = G sqrt(lambda_n / lambda_0)
  Total,        // r_n = G sqrt(lambda_n)
};

std::string_view gain_reference_name(GainReference r);

struct GainState {
  double gain = 0.0;
  GainReference reference = GainReference::LeadingMode;
  Eigen::VectorXd squeezing;     // r_n
  Eigen::VectorXd weights;       // Lambda_n, sums to 1
  Eigen::VectorXd mean_photons;  // sinh^2 r_n
  std::uint64_t lambda_fingerprint = 0;

  // Test double: explicit squeezing parameters, weights from sinh^2 r.
  static GainState from_squeezing(const Eigen::VectorXd& r, std::uint64_t fingerprint);
};

GainState redistribute(const Eigen::VectorXd& lambdas, double gain,
                       GainReference reference = GainReference::LeadingMode);
inline GainState redistribute(const SchmidtDecomposition& d, double gain,
                              GainReference reference = GainReference::LeadingMode) {
  GainState s = redistribute(d.lambdas, gain, reference);
  s.lambda_fingerprint = d.fingerprint();
  return s;
}

// K = 1 / sum w_n^2.
double schmidt_number(const Eigen::VectorXd& weights);

struct PairSuperposition {
  std::size_t index = 0;
  Eigen::VectorXcd plus;   // (u_n + u_{n+1}) / sqrt 2
  Eigen::VectorXcd minus;  // (u_n - u_{n+1}) / sqrt 2
};

// Throws PreconditionError reporting |l_n - l_{n+1}| when the pair is not degenerate.
PairSuperposition pair_superpositions(const SchmidtDecomposition& d, std::size_t n, double tolerance = 1e-3);

// mode_NNN.csv (omega_rad_per_fs, wavelength_nm, re_u, im_u) for the first
// `count` modes and modes.json with lambdas and, per gain, Lambda and K.
void export_modes(const std::filesystem::path& dir, const SchmidtDecomposition& d,
                  const std::vector<GainState>& gains, std::size_t count);

}  // namespace bsv
