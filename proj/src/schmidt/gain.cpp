#include <cmath>
#include <limits>
#include <sstream>

#include "bsv/errors.hpp"
#include "bsv/schmidt.hpp"

namespace bsv {
namespace {

// log(sinh(r) / r) without overflow or 0/0.
double log_sinhc(double r) {
  if (r < 1e-4) return std::log1p(r * r / 6.0);
  if (r < 20.0) return std::log(std::sinh(r) / r);
  return r - std::log(2.0 * r) + std::log1p(-std::exp(-2.0 * r));
}

Eigen::VectorXd softmax(const Eigen::VectorXd& logw) {
  const double top = logw.maxCoeff();
  Eigen::VectorXd w(logw.size());
  for (Eigen::Index i = 0; i < logw.size(); ++i) w[i] = std::exp(logw[i] - top);
  return w / w.sum();
}

}  // namespace

std::string_view gain_reference_name(GainReference r) {
  return r == GainReference::LeadingMode ? "leading_mode" : "total";
}

GainState redistribute(const Eigen::VectorXd& lambdas, double gain, GainReference reference) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) throw PreconditionError("parametric gain must be finite and >= 0");
  if (lambdas.size() == 0) throw PreconditionError("empty Schmidt spectrum");
  if ((lambdas.array() < 0.0).any()) throw PreconditionError("Schmidt eigenvalues must be non-negative");
  const double ref = reference == GainReference::LeadingMode ? lambdas.maxCoeff() : 1.0;
  if (!(ref > 0.0)) throw PreconditionError("Schmidt spectrum has no positive eigenvalue");

  GainState s;
  s.gain = gain;
  s.reference = reference;
  s.lambda_fingerprint = lambda_fingerprint(lambdas);
  const Eigen::Index n = lambdas.size();
  s.squeezing.resize(n);
  s.mean_photons.resize(n);
  Eigen::VectorXd logw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r = gain * std::sqrt(lambdas[i] / ref);
    s.squeezing[i] = r;
    const double sh = std::sinh(r);
    s.mean_photons[i] = sh * sh;
    // Lambda_n is proportional to sinh^2(r_n) / G^2 = lambda_n sinhc^2(r_n) / ref
    logw[i] = lambdas[i] > 0.0 ? std::log(lambdas[i]) + 2.0 * log_sinhc(r)
                               : -std::numeric_limits<double>::infinity();
  }
  s.weights = softmax(logw);
  return s;
}

GainState GainState::from_squeezing(const Eigen::VectorXd& r, std::uint64_t fingerprint) {
  if (r.size() == 0 || (r.array() < 0.0).any()) throw PreconditionError("squeezing parameters must be >= 0");
  GainState s;
  s.gain = r.maxCoeff();
  s.reference = GainReference::Total;
  s.squeezing = r;
  s.mean_photons = r.array().sinh().square();
  const double total = s.mean_photons.sum();
  s.weights = total > 0.0 ? Eigen::VectorXd(s.mean_photons / total) : Eigen::VectorXd::Constant(r.size(), 1.0 / r.size());
  s.lambda_fingerprint = fingerprint;
  return s;
}

double schmidt_number(const Eigen::VectorXd& weights) { return 1.0 / weights.squaredNorm(); }

PairSuperposition pair_superpositions(const SchmidtDecomposition& d, std::size_t n, double tolerance) {
  if (n + 1 >= d.rank_kept) {
    std::ostringstream os;
    os << "pair index " << n << " needs modes " << n << " and " << n + 1 << " but only " << d.rank_kept << " are kept";
    throw PreconditionError(os.str());
  }
  const auto i = static_cast<Eigen::Index>(n);
  const double a = d.lambdas[i];
  const double b = d.lambdas[i + 1];
  if (!(a > 0.0) || std::abs(a - b) / a >= tolerance) {
    std::ostringstream os;
    os.precision(6);
    os << "modes " << n << " and " << n + 1 << " are not degenerate: |lambda_n - lambda_n+1| = " << std::abs(a - b)
       << " (relative " << (a > 0.0 ? std::abs(a - b) / a : 0.0) << ", tolerance " << tolerance << ")";
    throw PreconditionError(os.str());
  }
  PairSuperposition p;
  p.index = n;
  p.plus = (d.modes_s.col(i) + d.modes_s.col(i + 1)) / std::sqrt(2.0);
  p.minus = (d.modes_s.col(i) - d.modes_s.col(i + 1)) / std::sqrt(2.0);
  return p;
}

}  // namespace bsv
