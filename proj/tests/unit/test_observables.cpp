#include <cmath>
#include <complex>
#include <random>

#include <Eigen/QR>
#include <doctest.h>

#include "bsv/errors.hpp"
#include "bsv/observables.hpp"
#include "common/setup.hpp"
#include "oracles/fock.hpp"
#include "oracles/mehler.hpp"
#include "oracles/toy.hpp"

using namespace bsv;
using cplx = std::complex<double>;

namespace {

const FrequencyGrid kToyGrid = FrequencyGrid::symmetric(2.0, 8, 0.35);  // step 0.1

using oracle::complete_basis;
using oracle::overlap;
using oracle::points;
using oracle::random_orthonormal;

Eigen::VectorXcd gaussian_mode(const FrequencyGrid& g, double mu, double sigma) {
  Eigen::VectorXcd u(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) u[j] = std::exp(-std::pow(g.omega(j) - mu, 2) / (4 * sigma * sigma));
  return u / std::sqrt(u.squaredNorm() * g.step());
}

constexpr int kCutoff = 40;

}  // namespace

TEST_CASE("Fock oracle state has the intended pair amplitudes") {
  const oracle::TwoModeFock fock(kCutoff);
  const auto psi = fock.squeezed(0.3, 0.4, 0.17, -1.1);
  CHECK(psi.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(fock.pair_amplitude(psi, 0, 0) - std::polar(std::sinh(0.3) * std::cosh(0.3), 0.4)) < 1e-12);
  CHECK(std::abs(fock.pair_amplitude(psi, 0, 1)) < 1e-15);
  const auto tm = fock.two_mode(0.3);
  CHECK(std::abs(fock.pair_amplitude(tm, 0, 1) - std::sinh(0.3) * std::cosh(0.3)) < 1e-12);
}

TEST_CASE("band moments match brute force on squeezed Schmidt modes") {
  std::mt19937_64 rng(17);
  const oracle::TwoModeFock fock(kCutoff);
  for (int trial = 0; trial < 5; ++trial) {
    const ComplexMatrix u = random_orthonormal(rng, kToyGrid, 2);
    std::uniform_real_distribution<double> ph(-M_PI, M_PI), rr(0.01, 0.3);
    const double phi[2] = {ph(rng), ph(rng)};
    const Eigen::Vector2d r(rr(rng), rr(rng));
    ComplexMatrix v = u;
    for (int n = 0; n < 2; ++n) v.col(n) *= std::polar(1.0, phi[n]);
    const Eigen::Vector2d l(0.6, 0.4);
    const auto d = SchmidtDecomposition::from_modes(kToyGrid, l, u, v);
    const auto moments = ModeMoments::squeezed(GainState::from_squeezing(r, d.fingerprint()));
    const auto psi = fock.squeezed(r[0], phi[0], r[1], phi[1]);

    const std::pair<SpectralBand, SpectralBand> cases[] = {
        {points(kToyGrid, 0, 3), points(kToyGrid, 4, 7)},
        {points(kToyGrid, 0, 4), points(kToyGrid, 3, 7)},  // overlapping
        {points(kToyGrid, 1, 1), points(kToyGrid, 5, 6)},
        {points(kToyGrid, 0, 7), points(kToyGrid, 2, 2)},
    };
    for (const auto& [a, b] : cases) {
      const auto got = band_pair_moments(d, moments, a, b);
      const ComplexMatrix basis = complete_basis(u, kToyGrid, rng);
      const auto ref = fock.moments(psi, overlap(basis, kToyGrid, a), overlap(basis, kToyGrid, b));
      CHECK(got.a.mean == doctest::Approx(ref.mean_a).epsilon(1e-9));
      CHECK(std::abs(got.a.mean - ref.mean_a) < 1e-6);
      CHECK(std::abs(got.b.mean - ref.mean_b) < 1e-6);
      CHECK(std::abs(got.a.variance - ref.var_a) < 1e-6);
      CHECK(std::abs(got.b.variance - ref.var_b) < 1e-6);
      CHECK(std::abs(got.covariance - ref.cov) < 1e-6);
      CHECK(std::abs(got.difference_variance - ref.var_diff) < 1e-6);
      const auto single = band_moments(d, moments, a);
      CHECK(single.variance == doctest::Approx(got.a.variance));
    }
  }
}

TEST_CASE("two-mode squeezed twin beams give zero NRF") {
  // lobes c (points 0-3) and d (points 4-7) in a two-mode squeezed vacuum
  std::mt19937_64 rng(4);
  const ComplexMatrix basis = random_orthonormal(rng, FrequencyGrid::symmetric(2.0, 4, 0.15), 2);
  ComplexMatrix cd = ComplexMatrix::Zero(8, 2);
  cd.block(0, 0, 4, 1) = basis.col(0);
  cd.block(4, 1, 4, 1) = basis.col(1);
  // Takagi form of c d^T + d c^T: u = (c +- d)/sqrt2 with v = +u, -u
  ComplexMatrix u(8, 2), v(8, 2);
  u.col(0) = (cd.col(0) + cd.col(1)) / std::sqrt(2.0);
  u.col(1) = (cd.col(0) - cd.col(1)) / std::sqrt(2.0);
  v.col(0) = u.col(0);
  v.col(1) = -u.col(1);
  const auto d = SchmidtDecomposition::from_modes(kToyGrid, Eigen::Vector2d(0.5, 0.5), u, v);
  const double r = 0.3;
  const auto g = GainState::from_squeezing(Eigen::Vector2d(r, r), d.fingerprint());
  const auto left = points(kToyGrid, 0, 3), right = points(kToyGrid, 4, 7);

  const oracle::TwoModeFock fock(kCutoff);
  const ComplexMatrix full = complete_basis(cd, kToyGrid, rng);
  const auto ref = fock.moments(fock.two_mode(r), overlap(full, kToyGrid, left), overlap(full, kToyGrid, right));
  const auto got = band_pair_moments(d, ModeMoments::squeezed(g), left, right);
  CHECK(std::abs(ref.var_diff) < 1e-12);
  CHECK(std::abs(got.difference_variance) < 1e-12);
  CHECK(std::abs(got.covariance - ref.cov) < 1e-9);
  CHECK(nrf(d, g, left, right) < 1e-10);
  CHECK(got.a.mean == doctest::Approx(std::pow(std::sinh(r), 2)));
}

TEST_CASE("thermal test double: NRF = 1 + n") {
  ComplexMatrix u = ComplexMatrix::Zero(8, 2);
  u(1, 0) = u(6, 1) = 1.0 / std::sqrt(kToyGrid.step());
  const auto d = SchmidtDecomposition::from_modes(kToyGrid, Eigen::Vector2d(0.5, 0.5), u, u);
  for (double n : {0.1, 1.0, 25.0}) {
    const auto m = ModeMoments::thermal(Eigen::Vector2d(n, n), d.fingerprint());
    const auto a = points(kToyGrid, 0, 3), b = points(kToyGrid, 4, 7);
    const auto single = band_moments(d, m, a);
    CHECK(single.mean == doctest::Approx(n));
    CHECK(single.variance == doctest::Approx(n * n + n));
    CHECK(nrf(d, m, a, b) == doctest::Approx(1.0 + n).epsilon(1e-12));
  }
}

TEST_CASE("band means and variances are additive over adjacent bands") {
  const auto g = FrequencyGrid::symmetric(2.0, 128, 0.3);
  const auto d = decompose(oracle::double_gaussian(g, 0.05, 0.02));
  const auto gain = redistribute(d, 2.0);
  const auto m = ModeMoments::squeezed(gain);
  const double split = g.omega(70) - 0.5 * g.step();
  const SpectralBand lo{g.omega(0) - 0.5 * g.step(), split}, hi{split, g.omega(127) + 0.5 * g.step()};
  const SpectralBand all{lo.lower, hi.upper};
  const auto pair = band_pair_moments(d, m, lo, hi);
  const auto whole = band_moments(d, m, all);
  CHECK(pair.a.mean + pair.b.mean == doctest::Approx(whole.mean).epsilon(1e-12));
  CHECK(pair.a.variance + pair.b.variance + 2 * pair.covariance == doctest::Approx(whole.variance).epsilon(1e-10));
  CHECK(whole.mean == doctest::Approx(gain.mean_photons.sum()).epsilon(1e-10));
  // Var(N_a - N_b) from the difference overlaps equals the expanded form
  CHECK(pair.difference_variance ==
        doctest::Approx(pair.a.variance + pair.b.variance - 2 * pair.covariance).epsilon(1e-9));
}

TEST_CASE("NRF preconditions") {
  const auto g = FrequencyGrid::symmetric(2.0, 64, 0.3);
  const auto d = decompose(oracle::double_gaussian(g, 0.05, 0.02));
  const SpectralBand a{1.8, 2.0}, b{2.0, 2.2}, overlapping{1.9, 2.1};
  CHECK_THROWS_AS(nrf(d, redistribute(d, 0.0), a, b), UndefinedObservableError);
  CHECK_THROWS_AS(nrf(d, redistribute(d, 1.0), a, overlapping), PreconditionError);
  CHECK_THROWS_AS(nrf(d, redistribute(d, 1.0), SpectralBand{1.0, 1.5}, b), RangeError);
  CHECK_THROWS_AS(SpectralBand({2.1, 2.0}).indices(g), PreconditionError);
  auto other = redistribute(d, 1.0);
  other.lambda_fingerprint ^= 1;
  CHECK_THROWS_AS(nrf(d, other, a, b), ConsistencyError);
  CHECK_THROWS_AS(spectrum(d, other, SpectrumScale::ModeWeights), ConsistencyError);
}

TEST_CASE("spectrum scales") {
  const auto g = FrequencyGrid::symmetric(2.0, 128, 0.3);
  const auto d = decompose(oracle::double_gaussian(g, 0.05, 0.02));
  const auto gain = redistribute(d, 3.0);
  CHECK(spectrum(d, gain, SpectrumScale::ModeWeights).integral() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(spectrum(d, gain, SpectrumScale::Photons).integral() == doctest::Approx(gain.mean_photons.sum()).epsilon(1e-10));
  const auto peak = spectrum(d, gain, SpectrumScale::PeakNormalized);
  CHECK(*std::max_element(peak.values.begin(), peak.values.end()) == 1.0);
}

TEST_CASE("FWHM of a Gaussian line and a two-peak split") {
  const auto g = FrequencyGrid::symmetric(2.0, 2001, 0.3);
  const double sigma = 0.02;
  ComplexMatrix u(g.size(), 1);
  u.col(0) = gaussian_mode(g, 2.0, sigma);
  const auto d = SchmidtDecomposition::from_modes(g, Eigen::VectorXd::Ones(1), u, u);
  const auto s = spectrum(d, redistribute(d, 1.0), SpectrumScale::PeakNormalized);
  const Peak p = fwhm(s);
  CHECK(p.fwhm_rad_per_fs == doctest::Approx(2.0 * std::sqrt(2.0 * std::log(2.0)) * sigma).epsilon(1e-5));
  CHECK(p.omega == doctest::Approx(2.0));
  CHECK(p.fwhm_nm == doctest::Approx(std::abs(wavelength_nm_from_omega(p.lower_half) -
                                              wavelength_nm_from_omega(p.upper_half))));

  ComplexMatrix two(g.size(), 2);
  two.col(0) = gaussian_mode(g, 1.9, 0.01);
  two.col(1) = gaussian_mode(g, 2.1, 0.015);
  const auto d2 = SchmidtDecomposition::from_modes(g, Eigen::Vector2d(0.5, 0.5), two, two, 1e-8);
  const auto s2 = spectrum(d2, redistribute(d2, 0.0), SpectrumScale::PeakNormalized);
  const auto a = find_peaks(s2);
  REQUIRE(a.peaks.size() == 2);
  CHECK(a.peaks[0].omega == doctest::Approx(1.9).epsilon(1e-4));
  CHECK(a.peaks[1].omega == doctest::Approx(2.1).epsilon(1e-4));
  CHECK(*a.separation_rad_per_fs == doctest::Approx(0.2).epsilon(1e-3));
  REQUIRE(a.split_index);
  CHECK(g.omega(*a.split_index) > 1.95);
  CHECK(g.omega(*a.split_index) < 2.05);
}

TEST_CASE("peaks closer than the merge gap form one cluster") {
  const auto g = FrequencyGrid::symmetric(2.0, 801, 0.3);
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double w = g.omega(j);
    v[j] = std::exp(-std::pow(w - 1.996, 2) / 2e-6) + std::exp(-std::pow(w - 2.004, 2) / 2e-6);
  }
  const Spectrum s{g, v, SpectrumScale::PeakNormalized};
  CHECK(find_peaks(s).peaks.size() == 1);
  CHECK(find_peaks(s, {0.1, 0.0}).peaks.size() == 2);
}

TEST_CASE("a line cut by the grid edge raises EdgeError") {
  const auto g = FrequencyGrid::symmetric(2.0, 201, 0.3);
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::exp(-std::pow(g.omega(j) - 1.71, 2) / 0.002);
  CHECK_THROWS_AS(fwhm(Spectrum{g, v, SpectrumScale::PeakNormalized}), EdgeError);
}

TEST_CASE("g2 = 1 + 2/K stays in (1, 3]") {
  std::mt19937_64 rng(8);
  std::exponential_distribution<double> e;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd l(1 + t % 30);
    for (auto& x : l) x = e(rng);
    std::sort(l.data(), l.data() + l.size(), std::greater<>());
    l /= l.sum();
    for (double G : {0.0, 1.0, 7.0, 15.0}) {
      const auto s = redistribute(l, G);
      const double g2 = g2_integral(s);
      CHECK(g2 > 1.0);
      CHECK(g2 <= 3.0 + 1e-15);
      CHECK(g2 == doctest::Approx(1.0 + 2.0 / schmidt_number(s.weights)));
    }
  }
  CHECK_THROWS_AS(g2_integral(redistribute(Eigen::VectorXd::Ones(1), 1.0), BeamKind::NonDegenerate), UnsupportedError);
}

TEST_CASE("bands from wavelengths are ordered in frequency") {
  const auto b = SpectralBand::from_wavelengths_nm(850, 780);
  CHECK(b.lower < b.upper);
  CHECK(b.lower == doctest::Approx(omega_from_wavelength(Wavelength::from_nm(850))));
}
