#include <arm_neon.h>

#include <cmath>

#include "bsv/kernels/kernels.hpp"

// NEON covers the reductions and the scaling; the transcendental kernels
// reuse the scalar reference.
namespace bsv::kernels {
namespace {

double sum_squared_magnitude_neon(std::span<const cplx> z) {
  const double* p = reinterpret_cast<const double*>(z.data());
  const std::size_t n = 2 * z.size();
  float64x2_t a0 = vdupq_n_f64(0.0);
  float64x2_t a1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const float64x2_t v0 = vld1q_f64(p + k);
    const float64x2_t v1 = vld1q_f64(p + k + 2);
    a0 = vfmaq_f64(a0, v0, v0);
    a1 = vfmaq_f64(a1, v1, v1);
  }
  double acc = vaddvq_f64(vaddq_f64(a0, a1));
  for (; k < n; ++k) acc += p[k] * p[k];
  return acc;
}

void accumulate_intensity_neon(std::span<double> out, std::span<const cplx> z, double w) {
  const double* p = reinterpret_cast<const double*>(z.data());
  std::size_t j = 0;
  for (; j + 2 <= out.size(); j += 2) {
    const float64x2_t v0 = vld1q_f64(p + 2 * j);
    const float64x2_t v1 = vld1q_f64(p + 2 * j + 2);
    const float64x2_t m = vpaddq_f64(vmulq_f64(v0, v0), vmulq_f64(v1, v1));
    vst1q_f64(out.data() + j, vfmaq_n_f64(vld1q_f64(out.data() + j), m, w));
  }
  for (; j < out.size(); ++j) out[j] += w * std::norm(z[j]);
}

void scale_neon(std::span<cplx> z, double s) {
  double* p = reinterpret_cast<double*>(z.data());
  const std::size_t n = 2 * z.size();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(p + k, vmulq_n_f64(vld1q_f64(p + k), s));
  for (; k < n; ++k) p[k] *= s;
}

}  // namespace

const Table* neon_table() {
  static const Table table{Backend::Neon,
                           sum_squared_magnitude_neon,
                           accumulate_intensity_neon,
                           scale_neon,
                           scalar_table().sincos,
                           scalar_table().assemble_tpa_line};
  return &table;
}

}  // namespace bsv::kernels
