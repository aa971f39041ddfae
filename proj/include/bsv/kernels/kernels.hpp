#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Elementwise inner loops of the TPA builders and the observables. Each
// kernel has a scalar reference implementation and, where the target allows
// it, a vector implementation chosen once at runtime. BSV_KERNELS=scalar
// forces the reference path.
namespace bsv::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2, Neon };

enum class Modulation {
  None,         // single crystal
  Cosine,       // cos(theta) exp(-i theta)
  UnitCosine,   // exp(-i theta), the cosine factor forced to 1
};

// One line of the TPA with the idler index fixed and the signal index
// running. pump_k and envelope are the slices of the pump-side tables
// starting at the fixed index, so pump_k[j] = k_p(w_j + w_fixed).
struct TpaLine {
  std::span<const double> envelope;
  std::span<const double> pump_k;
  std::span<const double> signal_k;
  double fixed_k = 0.0;
  double half_length = 0.0;
  Modulation modulation = Modulation::None;
  // theta[j] = (x[j] + (pump_phase[j] - signal_phase[j])) + (offset - fixed_phase)
  std::span<const double> pump_phase;
  std::span<const double> signal_phase;
  double fixed_phase = 0.0;
  double offset = 0.0;
};

struct Table {
  Backend backend;
  double (*sum_squared_magnitude)(std::span<const cplx>);
  void (*accumulate_intensity)(std::span<double>, std::span<const cplx>, double);
  void (*scale)(std::span<cplx>, double);
  void (*sincos)(std::span<const double>, std::span<double>, std::span<double>);
  void (*assemble_tpa_line)(const TpaLine&, std::span<cplx>);
};

const Table& scalar_table();
// Tables for vector backends; nullptr when not compiled in or not supported by the CPU.
const Table* avx2_table();
const Table* neon_table();

const Table& active();
Backend active_backend();
std::string_view backend_name(Backend b);

inline double sum_squared_magnitude(std::span<const cplx> z) { return active().sum_squared_magnitude(z); }
inline void accumulate_intensity(std::span<double> out, std::span<const cplx> z, double w) {
  active().accumulate_intensity(out, z, w);
}
inline void scale(std::span<cplx> z, double s) { active().scale(z, s); }
inline void sincos(std::span<const double> x, std::span<double> s, std::span<double> c) {
  active().sincos(x, s, c);
}
inline void assemble_tpa_line(const TpaLine& line, std::span<cplx> out) { active().assemble_tpa_line(line, out); }

}  // namespace bsv::kernels
