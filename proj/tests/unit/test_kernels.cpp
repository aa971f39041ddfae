#include <cmath>
#include <random>
#include <vector>

#include <doctest.h>

#include "bsv/kernels/kernels.hpp"

using namespace bsv::kernels;

namespace {

std::vector<const Table*> vector_tables() {
  std::vector<const Table*> out;
  if (const Table* t = avx2_table()) out.push_back(t);
  if (const Table* t = neon_table()) out.push_back(t);
  return out;
}

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  std::vector<cplx> z(n);
  for (auto& v : z) v = {d(rng), d(rng)};
  return z;
}

// Lengths that exercise every tail case of 2- and 4-wide loops.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 31, 64, 257};

}  // namespace

TEST_CASE("active backend is one of the compiled tables") {
  const Backend b = active_backend();
  CHECK(active().backend == b);
  CHECK(!backend_name(b).empty());
  if (std::getenv("BSV_KERNELS") && std::string(std::getenv("BSV_KERNELS")) == "scalar") CHECK(b == Backend::Scalar);
}

TEST_CASE("vector reductions match the scalar reference") {
  std::mt19937_64 rng(7);
  for (const Table* t : vector_tables()) {
    CAPTURE(backend_name(t->backend));
    for (std::size_t n : kLengths) {
      const auto z = random_complex(n, rng);
      const double ref = scalar_table().sum_squared_magnitude(z);
      CHECK(t->sum_squared_magnitude(z) == doctest::Approx(ref).epsilon(1e-13));

      std::vector<double> a(n, 0.5), b(n, 0.5);
      scalar_table().accumulate_intensity(a, z, 0.3);
      t->accumulate_intensity(b, z, 0.3);
      for (std::size_t j = 0; j < n; ++j) CHECK(b[j] == doctest::Approx(a[j]).epsilon(1e-15));

      auto s1 = z, s2 = z;
      scalar_table().scale(s1, -1.7);
      t->scale(s2, -1.7);
      for (std::size_t j = 0; j < n; ++j) CHECK(s1[j] == s2[j]);
    }
  }
}

TEST_CASE("vector sincos stays within a few ulp of libm") {
  std::mt19937_64 rng(11);
  const double ranges[] = {1.0, 10.0, 1e3, 1e6, 5e7, 2e9};
  for (const Table* t : vector_tables()) {
    CAPTURE(backend_name(t->backend));
    for (double range : ranges) {
      std::uniform_real_distribution<double> u(-range, range);
      std::vector<double> x(203);
      for (auto& v : x) v = u(rng);
      x[0] = 0.0;
      x[1] = -0.0;
      x[2] = M_PI / 2;
      std::vector<double> s(x.size()), c(x.size());
      t->sincos(x, s, c);
      for (std::size_t j = 0; j < x.size(); ++j) {
        CAPTURE(x[j]);
        CHECK(std::abs(s[j] - std::sin(x[j])) <= 4e-16);
        CHECK(std::abs(c[j] - std::cos(x[j])) <= 4e-16);
      }
    }
  }
}

TEST_CASE("vector TPA line assembly matches the scalar reference") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Table* t : vector_tables()) {
    for (Modulation mod : {Modulation::None, Modulation::Cosine, Modulation::UnitCosine}) {
      for (std::size_t n : kLengths) {
        std::vector<double> env(n), pk(n), sk(n), pp(n), sp(n);
        for (std::size_t j = 0; j < n; ++j) {
          env[j] = u(rng);
          sk[j] = 14.0 + 0.01 * u(rng);
          pk[j] = 2.0 * sk[j] + 1e-3 * (u(rng) - 0.5);
          // interferometer phases reach 1e7 rad at 36 cm of glass
          pp[j] = 1e7 + 10.0 * u(rng);
          sp[j] = 5e6 + 10.0 * u(rng);
        }
        // half_length of 0 hits the sinc series branch
        for (double half : {0.0, 1500.0}) {
          TpaLine line{env, pk, sk, 14.003, half, mod, pp, sp, 5e6 + 1.0, 0.25};
          std::vector<cplx> a(n), b(n);
          scalar_table().assemble_tpa_line(line, a);
          t->assemble_tpa_line(line, b);
          for (std::size_t j = 0; j < n; ++j) {
            CAPTURE(j);
            CHECK(std::abs(a[j] - b[j]) <= 1e-14);
          }
        }
      }
    }
  }
}
