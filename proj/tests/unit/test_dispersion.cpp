#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "bsv/dispersion.hpp"
#include "bsv/errors.hpp"

using namespace bsv;

namespace {

const MaterialTable& table() { return MaterialTable::bundled(); }

// Independent evaluation of the Schott form and its wavelength derivative.
struct SchottOracle {
  double b[3], c[3];
  double n(double l) const {
    double n2 = 1.0;
    for (int i = 0; i < 3; ++i) n2 += b[i] * l * l / (l * l - c[i]);
    return std::sqrt(n2);
  }
  double dn_dl(double l) const {
    double d = 0.0;
    for (int i = 0; i < 3; ++i) d += -2.0 * b[i] * c[i] * l / ((l * l - c[i]) * (l * l - c[i]));
    return d / (2.0 * n(l));
  }
  // group index n - l dn/dl
  double group_index(double l) const { return n(l) - l * dn_dl(l); }
};

const SchottOracle kSf6{{1.72448482, 0.390104889, 1.04572858}, {0.0134871947, 0.0569318095, 118.557185}};

double omega_nm(double nm) { return omega_from_wavelength(Wavelength::from_nm(nm)); }

}  // namespace

TEST_CASE("bundled table loads with version and all materials") {
  CHECK(table().version() == "2026.10.1");
  for (const char* name : {"vacuum", "BBO_o", "BBO_e", "SF6", "air"}) CHECK(table().contains(name));
  CHECK_FALSE(table().contains("N-SF6"));
  CHECK_THROWS_AS(table().at("unobtainium"), Error);
}

TEST_CASE("BBO ordinary index at 800 nm") {
  // n^2 = A + B / (l^2 - C) - D l^2, evaluated by hand
  const double l2 = 0.64;
  const double expected = std::sqrt(2.7405 + 0.0184 / (l2 - 0.0179) - 0.0155 * l2);
  CHECK(expected == doctest::Approx(1.661372).epsilon(1e-6));
  CHECK(refractive_index(table().at("BBO_o"), Wavelength::from_nm(800)) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("SF6 index and dispersion agree with an analytic derivative") {
  const Material& sf6 = table().at("SF6");
  for (double nm : {450.0, 800.0, 827.0, 1500.0}) {
    CAPTURE(nm);
    const double l = nm * 1e-3;
    CHECK(refractive_index(sf6, Wavelength{l}) == doctest::Approx(kSf6.n(l)).epsilon(1e-14));
    const double k1 = kSf6.group_index(l) / kSpeedOfLight;
    CHECK(inverse_group_velocity(sf6, omega_nm(nm)) == doctest::Approx(k1).epsilon(1e-8));
  }
}

TEST_CASE("SF6 group velocity dispersion at 800 nm is 199.01 fs^2/mm") {
  const double k2 = group_velocity_dispersion(table().at("SF6"), omega_nm(800), {1e-4}) * 1e3;
  CHECK(k2 == doctest::Approx(199.01).epsilon(0.02));
}

TEST_CASE("Richardson extrapolation confirms the derivative step") {
  const Material& sf6 = table().at("SF6");
  const double w = omega_nm(800);
  const double d1 = inverse_group_velocity(sf6, w, {1e-3});
  const double d2 = inverse_group_velocity(sf6, w, {5e-4});
  const double extrapolated = (4.0 * d2 - d1) / 3.0;
  CHECK(inverse_group_velocity(sf6, w) == doctest::Approx(extrapolated).epsilon(1e-9));
}

TEST_CASE("group velocity is the inverse of dk/domega") {
  for (const char* name : {"BBO_o", "BBO_e", "SF6", "air"}) {
    const Material& m = table().at(name);
    const double w = omega_nm(700);
    CHECK(group_velocity(m, w) * inverse_group_velocity(m, w) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(inverse_group_velocity(Material::vacuum(), 2.0) == doctest::Approx(1.0 / kSpeedOfLight).epsilon(1e-9));
}

TEST_CASE("indices outside the valid range raise RangeError naming the bounds") {
  try {
    refractive_index(table().at("BBO_o"), Wavelength::from_nm(2000));
    FAIL("expected RangeError");
  } catch (const RangeError& e) {
    const std::string what = e.what();
    CHECK(what.find("BBO_o") != std::string::npos);
    CHECK(what.find("0.22") != std::string::npos);
    CHECK(what.find("1.06") != std::string::npos);
  }
}

TEST_CASE("material table rejects malformed input") {
  CHECK_THROWS_AS(MaterialTable::parse("{"), Error);
  CHECK_THROWS_AS(MaterialTable::parse(R"({"version": "1", "materials": [{"name": "x", "formula_variant": "sellmeier9",
      "coefficients": ["1"], "valid_range_um": ["0.1", "1"]}]})"),
                  Error);
  CHECK_THROWS_AS(MaterialTable::parse(R"({"version": "1", "materials": [{"name": "x", "formula_variant": "constant",
      "coefficients": [true], "valid_range_um": ["0.1", "1"]}]})"),
                  Error);
  CHECK_THROWS_AS(MaterialTable::parse(R"({"version": "1", "materials": [{"name": "x", "formula_variant": "constant",
      "coefficients": ["1.5"], "valid_range_um": ["1", "0.1"]}]})"),
                  Error);
  const auto ok = MaterialTable::parse(R"({"version": "t1", "materials": [{"name": "glass", "formula_variant": "constant",
      "coefficients": ["1.5"], "valid_range_um": ["0.1", "2"]}]})");
  CHECK(ok.version() == "t1");
  CHECK(refractive_index(ok.at("glass"), Wavelength{1.0}) == 1.5);
  // bare JSON numbers are tolerated and read through their text
  const auto bare = MaterialTable::parse(R"({"version": "t2", "materials": [{"name": "glass", "formula_variant": "constant",
      "coefficients": [1.25], "valid_range_um": ["0.1", "2"]}]})");
  CHECK(refractive_index(bare.at("glass"), Wavelength{1.0}) == 1.25);
}

TEST_CASE("type-I angle for 400 nm -> 800 nm BBO") {
  const auto crystal = phase_match_type1(table().at("BBO_o"), table().at("BBO_e"), Wavelength::from_nm(400));
  // Bisection on the index ellipse, independent of the closed form.
  const double target = refractive_index(table().at("BBO_o"), Wavelength::from_nm(800));
  const double no = refractive_index(table().at("BBO_o"), Wavelength::from_nm(400));
  const double ne = refractive_index(table().at("BBO_e"), Wavelength::from_nm(400));
  double lo = 0.0, hi = std::numbers::pi / 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double n = 1.0 / std::sqrt(std::pow(std::cos(mid) / no, 2) + std::pow(std::sin(mid) / ne, 2));
    (n > target ? lo : hi) = mid;
  }
  CHECK(crystal.theta_rad == doctest::Approx(lo).epsilon(1e-12));
  CHECK(crystal.theta_rad * 180.0 / std::numbers::pi == doctest::Approx(29.025).epsilon(1e-4));
  const double wp = omega_nm(400);
  CHECK(std::abs(crystal_mismatch(0.5 * wp, 0.5 * wp, crystal)) < 1e-12);
}

TEST_CASE("interferometer phase is symmetric under signal-idler exchange") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const auto crystal = phase_match_type1(table().at("BBO_o"), table().at("BBO_e"), Wavelength::from_nm(400));
  Geometry g{Length::from_mm(3), Length::from_cm(36), Length::from_cm(1.5), Length::from_cm(60)};
  const InterferometerMedia media{table().at("air"), table().at("SF6")};
  const double c = 0.5 * omega_nm(400);
  for (int i = 0; i < 50; ++i) {
    const double ws = c + u(rng);
    const double wi = c + u(rng);
    const double a = cosine_argument(ws, wi, crystal, g, media);
    const double b = cosine_argument(wi, ws, crystal, g, media);
    CHECK(std::abs(a - b) <= 1e-15 * std::abs(a));
  }
}

TEST_CASE("zero lengths contribute nothing to the phase") {
  const double c = 0.5 * omega_nm(400);
  const InterferometerMedia media{table().at("air"), table().at("SF6")};
  CHECK(interferometer_phase(c + 0.1, c - 0.05, Geometry{}, media) == 0.0);
}

TEST_CASE("group delay mismatch is affine in the pump path") {
  const auto crystal = phase_match_type1(table().at("BBO_o"), table().at("BBO_e"), Wavelength::from_nm(400));
  const double wp = omega_nm(400);
  const InterferometerMedia media{Material::vacuum(), table().at("SF6")};
  Geometry g{Length::from_mm(3), Length::from_cm(36), Length{}, Length{}};
  const GroupDelayOptions opt{true, {1e-5}};
  auto at = [&](double cm) {
    g.pump_path = Length::from_cm(cm);
    return group_delay_mismatch(omega_nm(827), wp, crystal, g, media, opt);
  };
  const double f0 = at(0), f1 = at(40), f2 = at(80);
  CHECK(f1 - f0 == doctest::Approx(f2 - f1).epsilon(1e-6));
  // slope is half the pump inverse group velocity in vacuum
  CHECK((f2 - f0) / Length::from_cm(80).um == doctest::Approx(0.5 / kSpeedOfLight).epsilon(1e-6));
}

TEST_CASE("pump path without the crystal term equals the group index times the glass length") {
  const auto crystal = phase_match_type1(table().at("BBO_o"), table().at("BBO_e"), Wavelength::from_nm(400));
  const InterferometerMedia media{Material::vacuum(), table().at("SF6")};
  for (double d_cm : {5.0, 20.0, 36.0}) {
    const Geometry g{Length::from_mm(3), Length::from_cm(d_cm), Length{}, Length{}};
    GroupDelayOptions opt;
    opt.include_crystal = false;
    const Length d0 = find_pump_path(omega_nm(800), omega_nm(400), crystal, g, media, opt);
    const double expected = d_cm * kSf6.group_index(0.8);
    CHECK(d0.cm() == doctest::Approx(expected).epsilon(1e-6));
  }
}

TEST_CASE("solved pump path zeroes the mismatch and grows with the glass length") {
  const auto crystal = phase_match_type1(table().at("BBO_o"), table().at("BBO_e"), Wavelength::from_nm(400));
  const InterferometerMedia media{Material::vacuum(), table().at("SF6")};
  double previous = 0.0;
  for (double d_cm : {5.0, 20.0, 36.0, 60.0}) {
    Geometry g{Length::from_mm(3), Length::from_cm(d_cm), Length{}, Length{}};
    g.pump_path = find_pump_path(omega_nm(827), omega_nm(400), crystal, g, media);
    // The mismatch is evaluated on phases of ~1e7 rad, so its floor is ~1e-4 fs;
    // expressed as a pump-path error through the 1/(2c) slope that is < 1 nm.
    const double residual = group_delay_mismatch(omega_nm(827), omega_nm(400), crystal, g, media);
    CHECK(std::abs(residual) * 2.0 * kSpeedOfLight < 1e-3);
    CHECK(g.pump_path.cm() > previous);
    previous = g.pump_path.cm();
  }
}

TEST_CASE("no pump path in range raises NoRootError with the interval") {
  const auto crystal = phase_match_type1(table().at("BBO_o"), table().at("BBO_e"), Wavelength::from_nm(400));
  const InterferometerMedia media{Material::vacuum(), table().at("SF6")};
  const Geometry g{Length::from_mm(3), Length::from_cm(36), Length{}, Length{}};
  GroupDelayOptions opt;
  opt.max_pump_path = Length::from_cm(10);
  try {
    find_pump_path(omega_nm(800), omega_nm(400), crystal, g, media, opt);
    FAIL("expected NoRootError");
  } catch (const NoRootError& e) {
    CHECK(e.upper() == doctest::Approx(10.0));
    CHECK(e.lower() == 0.0);
  }
}

TEST_CASE("geometry validation names the negative length") {
  Geometry g{Length::from_mm(3), Length::from_cm(-1), Length{}, Length{}};
  try {
    g.validate();
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    CHECK(std::string(e.what()).find("gvd_length") != std::string::npos);
  }
}
