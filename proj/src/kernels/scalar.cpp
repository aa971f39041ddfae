#include <cmath>

#include "bsv/kernels/kernels.hpp"
#include "kernels/detail.hpp"

namespace bsv::kernels {
namespace {

double sum_squared_magnitude_scalar(std::span<const cplx> z) {
  double acc = 0.0;
  for (const cplx& v : z) acc += std::norm(v);
  return acc;
}

void accumulate_intensity_scalar(std::span<double> out, std::span<const cplx> z, double w) {
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += w * std::norm(z[j]);
}

void scale_scalar(std::span<cplx> z, double s) {
  for (cplx& v : z) v *= s;
}

void sincos_scalar(std::span<const double> x, std::span<double> s, std::span<double> c) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    s[j] = std::sin(x[j]);
    c[j] = std::cos(x[j]);
  }
}

void assemble_tpa_line_scalar(const TpaLine& line, std::span<cplx> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double x = (line.pump_k[j] - line.signal_k[j] - line.fixed_k) * line.half_length;
    const double sx = std::sin(x);
    const double cx = std::cos(x);
    const double a = line.envelope[j] * detail::sinc_from(x, sx);
    cplx v(a * cx, -a * sx);
    if (line.modulation != Modulation::None) {
      const double theta =
          (x + (line.pump_phase[j] - line.signal_phase[j])) + (line.offset - line.fixed_phase);
      const double st = std::sin(theta);
      const double ct = std::cos(theta);
      const cplx m = line.modulation == Modulation::Cosine ? cplx(ct * ct, -st * ct) : cplx(ct, -st);
      v *= m;
    }
    out[j] = v;
  }
}

}  // namespace

const Table& scalar_table() {
  static const Table table{Backend::Scalar,          sum_squared_magnitude_scalar,
                           accumulate_intensity_scalar, scale_scalar,
                           sincos_scalar,            assemble_tpa_line_scalar};
  return table;
}

}  // namespace bsv::kernels
