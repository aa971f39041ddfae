#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "bsv/errors.hpp"
#include "bsv/schmidt.hpp"

namespace bsv {
namespace {

using cplx = std::complex<double>;

// Largest-modulus sample of u made real-positive; v takes the conjugate phase.
void fix_phase(ComplexMatrix& u, ComplexMatrix& v, Eigen::Index n) {
  Eigen::Index idx = 0;
  u.col(n).cwiseAbs2().maxCoeff(&idx);
  const double a = std::arg(u(idx, n));
  const cplx rot = std::polar(1.0, -a);
  u.col(n) *= rot;
  v.col(n) *= std::conj(rot);
}

double reflection_expectation(const ComplexMatrix& u, Eigen::Index n, double dw) {
  const Eigen::VectorXcd col = u.col(n);
  return (col.adjoint() * col.reverse()).value().real() * dw;
}

bool near_degenerate(double a, double b, double tol) { return a > 0.0 && std::abs(a - b) / a < tol; }

std::size_t kept_rank(const Eigen::VectorXd& lambdas, const DecomposeOptions& opt) {
  const double total = lambdas.sum();
  const std::size_t n = static_cast<std::size_t>(lambdas.size());
  std::size_t r = 0;
  double cumulative = 0.0;
  while (r < n && cumulative < (1.0 - opt.truncation.tail) * total) cumulative += lambdas[static_cast<Eigen::Index>(r++)];
  r = std::max<std::size_t>(r, 1);
  if (opt.truncation.max_rank > 0) r = std::min(r, opt.truncation.max_rank);
  // never cut through a degenerate group
  while (r < n && near_degenerate(lambdas[static_cast<Eigen::Index>(r - 1)], lambdas[static_cast<Eigen::Index>(r)],
                                  opt.degeneracy_tolerance))
    ++r;
  return r;
}

}  // namespace

std::uint64_t lambda_fingerprint(const Eigen::VectorXd& lambdas) {
  std::uint64_t h = 1469598103934665603ull;
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    std::uint64_t bits = 0;
    const double v = lambdas[i];
    std::memcpy(&bits, &v, sizeof bits);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

std::uint64_t SchmidtDecomposition::fingerprint() const { return lambda_fingerprint(lambdas); }

ComplexMatrix SchmidtDecomposition::reconstruct() const {
  const Eigen::VectorXd s = lambdas.cwiseSqrt();
  return modes_s * s.asDiagonal() * modes_i.transpose();
}

SchmidtDecomposition SchmidtDecomposition::from_modes(const FrequencyGrid& grid, const Eigen::VectorXd& lambdas,
                                                      const ComplexMatrix& modes_s, const ComplexMatrix& modes_i,
                                                      double tolerance) {
  const Eigen::Index r = lambdas.size();
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (modes_s.rows() != n || modes_i.rows() != n || modes_s.cols() != r || modes_i.cols() != r)
    throw PreconditionError("mode matrices do not match the grid and lambda count");
  const ComplexMatrix id = ComplexMatrix::Identity(r, r);
  const double es = (modes_s.adjoint() * modes_s * grid.step() - id).cwiseAbs().maxCoeff();
  const double ei = (modes_i.adjoint() * modes_i * grid.step() - id).cwiseAbs().maxCoeff();
  if (es > tolerance || ei > tolerance) {
    std::ostringstream os;
    os << "supplied modes are not orthonormal (deviation " << std::max(es, ei) << ")";
    throw PreconditionError(os.str());
  }
  SchmidtDecomposition d;
  d.grid = grid;
  d.lambdas = lambdas;
  d.all_lambdas = lambdas;
  d.modes_s = modes_s;
  d.modes_i = modes_i;
  d.rank_kept = static_cast<std::size_t>(r);
  for (Eigen::Index k = 0; k < r; ++k) d.parity.push_back(reflection_expectation(modes_s, k, grid.step()));
  return d;
}

Eigen::VectorXd schmidt_eigenvalues(const JointSpectralAmplitude& tpa) {
  SvdResult svd = complex_svd(tpa.values() * tpa.grid().step(), false);
  return svd.singular_values.cwiseAbs2();
}

SchmidtDecomposition decompose(const JointSpectralAmplitude& tpa, const DecomposeOptions& options) {
  if (tpa.normalization() != TpaNormalization::UnitL2)
    throw PreconditionError("decompose requires a TPA normalized to unit L2 norm");
  const FrequencyGrid& grid = tpa.grid();
  const double dw = grid.step();
  SvdResult svd = complex_svd(tpa.values() * dw, true);

  SchmidtDecomposition d;
  d.grid = grid;
  d.all_lambdas = svd.singular_values.cwiseAbs2();
  const std::size_t r = kept_rank(d.all_lambdas, options);
  const auto re = static_cast<Eigen::Index>(r);
  d.rank_kept = r;
  d.lambdas = d.all_lambdas.head(re);

  const double inv_sqrt_dw = 1.0 / std::sqrt(dw);
  d.modes_s = svd.u.leftCols(re) * inv_sqrt_dw;
  d.modes_i = svd.vh.topRows(re).transpose() * inv_sqrt_dw;
  for (Eigen::Index n = 0; n < re; ++n) fix_phase(d.modes_s, d.modes_i, n);

  if (options.reflection_pairing) {
    Eigen::Index start = 0;
    while (start < re) {
      Eigen::Index end = start + 1;
      while (end < re && near_degenerate(d.lambdas[end - 1], d.lambdas[end], options.degeneracy_tolerance)) ++end;
      const Eigen::Index size = end - start;
      if (size > 1) {
        const ComplexMatrix block = d.modes_s.middleCols(start, size);
        const ComplexMatrix reflection = block.adjoint() * block.colwise().reverse() * dw;
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(0.5 * (reflection + reflection.adjoint()));
        // eigenvalues ascend; reverse so the reflection-even vector comes first
        const ComplexMatrix w = eig.eigenvectors().rowwise().reverse();
        d.modes_s.middleCols(start, size) = block * w;
        d.modes_i.middleCols(start, size) = d.modes_i.middleCols(start, size) * w.conjugate();
        for (Eigen::Index n = start; n < end; ++n) fix_phase(d.modes_s, d.modes_i, n);
        d.paired_groups.emplace_back(static_cast<std::size_t>(start), static_cast<std::size_t>(end));
        d.pairing_spread =
            std::max(d.pairing_spread, (d.lambdas[start] - d.lambdas[end - 1]) / d.lambdas[start]);
      }
      start = end;
    }
  }

  for (Eigen::Index n = 0; n < re; ++n) d.parity.push_back(reflection_expectation(d.modes_s, n, dw));
  return d;
}

}  // namespace bsv
