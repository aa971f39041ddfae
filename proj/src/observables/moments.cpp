#include <cmath>

#include "bsv/errors.hpp"
#include "bsv/observables.hpp"

namespace bsv {
namespace {

using cplx = std::complex<double>;

// O[m, n] = sum_{j in band} conj(x_m(j)) x_n(j) dw
ComplexMatrix overlap(const ComplexMatrix& modes, const std::vector<std::size_t>& idx, double dw) {
  ComplexMatrix rows(static_cast<Eigen::Index>(idx.size()), modes.cols());
  for (std::size_t r = 0; r < idx.size(); ++r)
    rows.row(static_cast<Eigen::Index>(r)) = modes.row(static_cast<Eigen::Index>(idx[r]));
  return rows.adjoint() * rows * dw;
}

struct BandOverlaps {
  ComplexMatrix o;  // signal-side modes
  ComplexMatrix p;  // idler-side modes
};

BandOverlaps band_overlaps(const SchmidtDecomposition& d, const SpectralBand& band) {
  const auto idx = band.indices(d.grid);
  return {overlap(d.modes_s, idx, d.grid.step()), overlap(d.modes_i, idx, d.grid.step())};
}

void check(const SchmidtDecomposition& d, const ModeMoments& m) {
  if (m.lambda_fingerprint != d.fingerprint() || static_cast<std::size_t>(m.occupation.size()) != d.rank_kept ||
      m.anomalous.size() != m.occupation.size())
    throw ConsistencyError("mode moments were not derived from this Schmidt decomposition");
}

double mean_of(const ModeMoments& m, const ComplexMatrix& o) {
  long double acc = 0.0L;
  for (Eigen::Index n = 0; n < o.rows(); ++n) acc += static_cast<long double>(m.occupation[n]) * o(n, n).real();
  return static_cast<double>(acc);
}

// Wick contraction for a zero-mean Gaussian state:
//   Cov(N_A, N_B) = sum q_n q_m O^A[m,n] P^B[m,n]
//                 + sum p_n p_m O^A[n,m] O^B[m,n]
//                 + sum p_n O^{A and B}[n,n]
// Called with the difference overlaps it gives Var(N_A - N_B) directly.
double contraction(const ModeMoments& m, const ComplexMatrix& oa, const ComplexMatrix& pb, const ComplexMatrix& ob) {
  const Eigen::Index r = oa.rows();
  long double anomalous = 0.0L;
  long double normal = 0.0L;
  for (Eigen::Index n = 0; n < r; ++n) {
    for (Eigen::Index k = 0; k < r; ++k) {
      anomalous += static_cast<long double>(m.anomalous[n] * m.anomalous[k]) * (oa(k, n) * pb(k, n)).real();
      normal += static_cast<long double>(m.occupation[n] * m.occupation[k]) * (oa(n, k) * ob(k, n)).real();
    }
  }
  return static_cast<double>(anomalous + normal);
}

double diagonal_term(const ModeMoments& m, const ComplexMatrix& o) { return mean_of(m, o); }

}  // namespace

ModeMoments ModeMoments::squeezed(const GainState& g) {
  ModeMoments m;
  m.occupation = g.mean_photons;
  m.anomalous.resize(g.squeezing.size());
  for (Eigen::Index n = 0; n < g.squeezing.size(); ++n)
    m.anomalous[n] = std::sinh(g.squeezing[n]) * std::cosh(g.squeezing[n]);
  m.lambda_fingerprint = g.lambda_fingerprint;
  return m;
}

ModeMoments ModeMoments::thermal(const Eigen::VectorXd& mean, std::uint64_t fingerprint) {
  return {mean, Eigen::VectorXd::Zero(mean.size()), fingerprint};
}

BandMoments band_moments(const SchmidtDecomposition& d, const ModeMoments& m, const SpectralBand& band) {
  check(d, m);
  const BandOverlaps b = band_overlaps(d, band);
  return {mean_of(m, b.o), contraction(m, b.o, b.p, b.o) + diagonal_term(m, b.o)};
}

BandMoments band_moments(const SchmidtDecomposition& d, const GainState& gain, const SpectralBand& band) {
  return band_moments(d, ModeMoments::squeezed(gain), band);
}

BandPairMoments band_pair_moments(const SchmidtDecomposition& d, const ModeMoments& m, const SpectralBand& a,
                                  const SpectralBand& b) {
  check(d, m);
  const BandOverlaps x = band_overlaps(d, a);
  const BandOverlaps y = band_overlaps(d, b);
  BandPairMoments out;
  out.a = {mean_of(m, x.o), contraction(m, x.o, x.p, x.o) + diagonal_term(m, x.o)};
  out.b = {mean_of(m, y.o), contraction(m, y.o, y.p, y.o) + diagonal_term(m, y.o)};

  ComplexMatrix both_o = ComplexMatrix::Zero(x.o.rows(), x.o.cols());
  if (a.overlaps(b)) both_o = band_overlaps(d, {std::max(a.lower, b.lower), std::min(a.upper, b.upper)}).o;
  out.covariance = contraction(m, x.o, y.p, y.o) + diagonal_term(m, both_o);

  const ComplexMatrix od = x.o - y.o;
  const ComplexMatrix pd = x.p - y.p;
  out.difference_variance =
      contraction(m, od, pd, od) + diagonal_term(m, x.o) + diagonal_term(m, y.o) - 2.0 * diagonal_term(m, both_o);
  return out;
}

double nrf(const SchmidtDecomposition& d, const ModeMoments& m, const SpectralBand& band_s,
           const SpectralBand& band_i) {
  if (band_s.overlaps(band_i)) throw PreconditionError("NRF bands must be disjoint");
  const BandPairMoments pm = band_pair_moments(d, m, band_s, band_i);
  const double total = pm.a.mean + pm.b.mean;
  if (!(total > 0.0)) throw UndefinedObservableError("NRF is undefined without photons in the bands");
  return pm.difference_variance / total;
}

double nrf(const SchmidtDecomposition& d, const GainState& gain, const SpectralBand& band_s,
           const SpectralBand& band_i) {
  if (gain.gain == 0.0) throw UndefinedObservableError("NRF is undefined at G = 0 (vacuum, no photons)");
  return nrf(d, ModeMoments::squeezed(gain), band_s, band_i);
}

}  // namespace bsv
