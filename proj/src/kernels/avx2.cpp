#include <immintrin.h>

#include <cmath>

#include "bsv/kernels/kernels.hpp"
#include "kernels/detail.hpp"

namespace bsv::kernels {
namespace {

// Three-part pi/2 for the fused reduction r = x - y*pi/2.
constexpr double kPio2Hi = 1.5707963267948966;
constexpr double kPio2Mid = 6.123233995736766e-17;
constexpr double kPio2Lo = -1.4973849048591698e-33;
constexpr double kTwoOverPi = 0.6366197723675814;
// Lanes beyond this magnitude take the scalar path (quadrant index must fit int32).
constexpr double kReductionLimit = 1.0e9;

// Minimax coefficients on |r| <= pi/4 (Cephes sin.c).
constexpr double kSin[6] = {1.58962301576546568060e-10, -2.50507477628578072866e-8,
                            2.75573136213857245213e-6,  -1.98412698295895385996e-4,
                            8.33333333332211858878e-3,  -1.66666666666666307295e-1};
constexpr double kCos[6] = {-1.13585365213876817300e-11, 2.08757008419747316778e-9,
                            -2.75573141792967388112e-7,  2.48015872888517045348e-5,
                            -1.38888888888730564116e-3,  4.16666666666665929218e-2};

inline __m256d poly6(__m256d z, const double (&c)[6]) {
  __m256d p = _mm256_set1_pd(c[0]);
  for (int k = 1; k < 6; ++k) p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(c[k]));
  return p;
}

inline bool in_reduction_range(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  const __m256d bad = _mm256_cmp_pd(ax, _mm256_set1_pd(kReductionLimit), _CMP_NLE_UQ);
  return _mm256_movemask_pd(bad) == 0;
}

inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d y =
      _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)), _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
  __m256d r = _mm256_fnmadd_pd(y, _mm256_set1_pd(kPio2Hi), x);
  r = _mm256_fnmadd_pd(y, _mm256_set1_pd(kPio2Mid), r);
  r = _mm256_fnmadd_pd(y, _mm256_set1_pd(kPio2Lo), r);

  const __m256d z = _mm256_mul_pd(r, r);
  const __m256d sp = _mm256_fmadd_pd(_mm256_mul_pd(r, z), poly6(z, kSin), r);
  const __m256d cp = _mm256_fmadd_pd(_mm256_mul_pd(z, z), poly6(z, kCos),
                                     _mm256_fnmadd_pd(_mm256_set1_pd(0.5), z, _mm256_set1_pd(1.0)));

  const __m128i q32 = _mm256_cvtpd_epi32(y);
  const __m256i q = _mm256_cvtepi32_epi64(q32);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256d sneg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, two), two));
  const __m256d cneg =
      _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(_mm256_add_epi64(q, one), two), two));
  const __m256d sign = _mm256_set1_pd(-0.0);

  s = _mm256_blendv_pd(sp, cp, swap);
  c = _mm256_blendv_pd(cp, sp, swap);
  s = _mm256_xor_pd(s, _mm256_and_pd(sneg, sign));
  c = _mm256_xor_pd(c, _mm256_and_pd(cneg, sign));
}

inline void sincos4_checked(__m256d x, __m256d& s, __m256d& c) {
  if (in_reduction_range(x)) {
    sincos4(x, s, c);
    return;
  }
  alignas(32) double xs[4], ss[4], cs[4];
  _mm256_store_pd(xs, x);
  for (int k = 0; k < 4; ++k) {
    ss[k] = std::sin(xs[k]);
    cs[k] = std::cos(xs[k]);
  }
  s = _mm256_load_pd(ss);
  c = _mm256_load_pd(cs);
}

double sum_squared_magnitude_avx2(std::span<const cplx> z) {
  const double* p = reinterpret_cast<const double*>(z.data());
  const std::size_t n = 2 * z.size();
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    const __m256d v0 = _mm256_loadu_pd(p + k);
    const __m256d v1 = _mm256_loadu_pd(p + k + 4);
    a0 = _mm256_fmadd_pd(v0, v0, a0);
    a1 = _mm256_fmadd_pd(v1, v1, a1);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(a0, a1));
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) acc += p[k] * p[k];
  return acc;
}

void accumulate_intensity_avx2(std::span<double> out, std::span<const cplx> z, double w) {
  const double* p = reinterpret_cast<const double*>(z.data());
  const __m256d wv = _mm256_set1_pd(w);
  std::size_t j = 0;
  for (; j + 4 <= out.size(); j += 4) {
    const __m256d v0 = _mm256_loadu_pd(p + 2 * j);
    const __m256d v1 = _mm256_loadu_pd(p + 2 * j + 4);
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
    const __m256d m = _mm256_permute4x64_pd(h, 0b11011000);
    _mm256_storeu_pd(out.data() + j, _mm256_fmadd_pd(wv, m, _mm256_loadu_pd(out.data() + j)));
  }
  for (; j < out.size(); ++j) out[j] += w * std::norm(z[j]);
}

void scale_avx2(std::span<cplx> z, double s) {
  double* p = reinterpret_cast<double*>(z.data());
  const std::size_t n = 2 * z.size();
  const __m256d sv = _mm256_set1_pd(s);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) _mm256_storeu_pd(p + k, _mm256_mul_pd(_mm256_loadu_pd(p + k), sv));
  for (; k < n; ++k) p[k] *= s;
}

void sincos_avx2(std::span<const double> x, std::span<double> s, std::span<double> c) {
  std::size_t j = 0;
  for (; j + 4 <= x.size(); j += 4) {
    __m256d sv, cv;
    sincos4_checked(_mm256_loadu_pd(x.data() + j), sv, cv);
    _mm256_storeu_pd(s.data() + j, sv);
    _mm256_storeu_pd(c.data() + j, cv);
  }
  for (; j < x.size(); ++j) {
    s[j] = std::sin(x[j]);
    c[j] = std::cos(x[j]);
  }
}

void assemble_tpa_line_avx2(const TpaLine& line, std::span<cplx> out) {
  const std::size_t n = out.size();
  const bool modulated = line.modulation != Modulation::None;
  const bool cosine = line.modulation == Modulation::Cosine;
  const __m256d fixed_k = _mm256_set1_pd(line.fixed_k);
  const __m256d half_length = _mm256_set1_pd(line.half_length);
  const __m256d phase_shift = _mm256_set1_pd(line.offset - line.fixed_phase);
  const __m256d abs_mask = _mm256_set1_pd(-0.0);
  const __m256d small = _mm256_set1_pd(1e-4);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sixth = _mm256_set1_pd(1.0 / 6.0);
  const __m256d inv120 = _mm256_set1_pd(1.0 / 120.0);
  double* o = reinterpret_cast<double*>(out.data());

  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d kp = _mm256_loadu_pd(line.pump_k.data() + j);
    const __m256d ks = _mm256_loadu_pd(line.signal_k.data() + j);
    const __m256d x = _mm256_mul_pd(_mm256_sub_pd(_mm256_sub_pd(kp, ks), fixed_k), half_length);
    __m256d sx, cx;
    sincos4_checked(x, sx, cx);

    const __m256d x2 = _mm256_mul_pd(x, x);
    const __m256d series = _mm256_fmadd_pd(_mm256_mul_pd(x2, x2), inv120, _mm256_fnmadd_pd(x2, sixth, one));
    const __m256d is_small = _mm256_cmp_pd(_mm256_andnot_pd(abs_mask, x), small, _CMP_LT_OQ);
    const __m256d safe_x = _mm256_blendv_pd(x, one, is_small);
    const __m256d sinc = _mm256_blendv_pd(_mm256_div_pd(sx, safe_x), series, is_small);

    const __m256d a = _mm256_mul_pd(_mm256_loadu_pd(line.envelope.data() + j), sinc);
    __m256d re = _mm256_mul_pd(a, cx);
    __m256d im = _mm256_xor_pd(_mm256_mul_pd(a, sx), abs_mask);

    if (modulated) {
      const __m256d pp = _mm256_loadu_pd(line.pump_phase.data() + j);
      const __m256d sp = _mm256_loadu_pd(line.signal_phase.data() + j);
      const __m256d theta = _mm256_add_pd(_mm256_add_pd(x, _mm256_sub_pd(pp, sp)), phase_shift);
      __m256d st, ct;
      sincos4_checked(theta, st, ct);
      __m256d mr, mi;
      if (cosine) {
        mr = _mm256_mul_pd(ct, ct);
        mi = _mm256_xor_pd(_mm256_mul_pd(st, ct), abs_mask);
      } else {
        mr = ct;
        mi = _mm256_xor_pd(st, abs_mask);
      }
      const __m256d nre = _mm256_fmsub_pd(re, mr, _mm256_mul_pd(im, mi));
      const __m256d nim = _mm256_fmadd_pd(re, mi, _mm256_mul_pd(im, mr));
      re = nre;
      im = nim;
    }

    const __m256d lo = _mm256_unpacklo_pd(re, im);
    const __m256d hi = _mm256_unpackhi_pd(re, im);
    _mm256_storeu_pd(o + 2 * j, _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(o + 2 * j + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
  }

  if (j < n) {
    TpaLine tail = line;
    tail.envelope = line.envelope.subspan(j);
    tail.pump_k = line.pump_k.subspan(j);
    tail.signal_k = line.signal_k.subspan(j);
    if (modulated) {
      tail.pump_phase = line.pump_phase.subspan(j);
      tail.signal_phase = line.signal_phase.subspan(j);
    }
    scalar_table().assemble_tpa_line(tail, out.subspan(j));
  }
}

}  // namespace

const Table* avx2_table() {
  static const Table table{Backend::Avx2,           sum_squared_magnitude_avx2,
                           accumulate_intensity_avx2, scale_avx2,
                           sincos_avx2,             assemble_tpa_line_avx2};
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &table : nullptr;
}

}  // namespace bsv::kernels
