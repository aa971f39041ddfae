#include <cmath>
#include <sstream>

#include "bsv/errors.hpp"
#include "bsv/jsa.hpp"
#include "bsv/kernels/kernels.hpp"

namespace bsv {
namespace {

struct PumpTables {
  std::vector<double> envelope;
  std::vector<double> pump_k;
  std::vector<double> signal_k;
};

void check_centering(const FrequencyGrid& grid, const PumpConfig& pump) {
  const double half = 0.5 * pump.omega();
  if (std::abs(grid.center() - half) > 1e-12 * half) {
    std::ostringstream os;
    os << "grid center " << grid.center() << " rad/fs is not the degenerate frequency " << half << " rad/fs";
    throw PreconditionError(os.str());
  }
  if (!(pump.tau_fs > 0.0)) throw PreconditionError("pump tau must be positive");
}

PumpTables pump_tables(const FrequencyGrid& grid, const PumpConfig& pump, const PhaseMatchedCrystal& crystal) {
  const std::size_t n = grid.size();
  const double wp = pump.omega();
  const double two_omega2 = 2.0 * pump.bandwidth() * pump.bandwidth();
  PumpTables t;
  t.envelope.resize(2 * n - 1);
  t.pump_k.resize(2 * n - 1);
  t.signal_k.resize(n);
  for (std::size_t m = 0; m < 2 * n - 1; ++m) {
    const double sum = grid.pair_sum(m);
    t.envelope[m] = std::exp(-(sum - wp) * (sum - wp) / two_omega2);
    t.pump_k[m] = crystal.pump_wavevector(sum);
  }
  for (std::size_t j = 0; j < n; ++j) t.signal_k[j] = crystal.signal_wavevector(grid.omega(j));
  return t;
}

kernels::TpaLine base_line(const PumpTables& t, std::size_t k, std::size_t n, double half_length) {
  kernels::TpaLine line;
  line.envelope = std::span<const double>(t.envelope).subspan(k, n);
  line.pump_k = std::span<const double>(t.pump_k).subspan(k, n);
  line.signal_k = t.signal_k;
  line.fixed_k = t.signal_k[k];
  line.half_length = half_length;
  return line;
}

}  // namespace

ComplexMatrix single_crystal_tpa_values(const FrequencyGrid& grid, const PumpConfig& pump,
                                        const PhaseMatchedCrystal& crystal, Length crystal_length) {
  check_centering(grid, pump);
  const std::size_t n = grid.size();
  const PumpTables t = pump_tables(grid, pump, crystal);
  ComplexMatrix f(n, n);
  for (std::size_t k = 0; k < n; ++k)
    kernels::assemble_tpa_line(base_line(t, k, n, 0.5 * crystal_length.um),
                               {f.col(static_cast<Eigen::Index>(k)).data(), n});
  return f;
}

ComplexMatrix interferometer_tpa_values(const FrequencyGrid& grid, const PumpConfig& pump,
                                        const PhaseMatchedCrystal& crystal, const Geometry& geometry,
                                        const InterferometerMedia& media, const InterferometerOptions& options) {
  check_centering(grid, pump);
  geometry.validate();
  const std::size_t n = grid.size();
  const PumpTables t = pump_tables(grid, pump, crystal);

  const double air_path = geometry.air_gap.um + geometry.pump_path.um;
  std::vector<double> pump_phase(2 * n - 1, 0.0);
  std::vector<double> signal_phase(n, 0.0);
  if (air_path != 0.0)
    for (std::size_t m = 0; m < 2 * n - 1; ++m)
      pump_phase[m] = 0.5 * wavevector(media.air, grid.pair_sum(m)) * air_path;
  for (std::size_t j = 0; j < n; ++j) {
    double p = 0.0;
    if (geometry.air_gap.um != 0.0) p += wavevector(media.air, grid.omega(j)) * geometry.air_gap.um;
    if (geometry.gvd_length.um != 0.0) p += wavevector(media.gvd, grid.omega(j)) * geometry.gvd_length.um;
    signal_phase[j] = 0.5 * p;
  }

  ComplexMatrix f(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    kernels::TpaLine line = base_line(t, k, n, 0.5 * geometry.crystal_length.um);
    line.modulation = options.force_unit_cosine ? kernels::Modulation::UnitCosine : kernels::Modulation::Cosine;
    line.pump_phase = std::span<const double>(pump_phase).subspan(k, n);
    line.signal_phase = signal_phase;
    line.fixed_phase = signal_phase[k];
    line.offset = options.phase_offset;
    kernels::assemble_tpa_line(line, {f.col(static_cast<Eigen::Index>(k)).data(), n});
  }
  return f;
}

JointSpectralAmplitude build_single_crystal_tpa(const FrequencyGrid& grid, const PumpConfig& pump,
                                                const PhaseMatchedCrystal& crystal, Length crystal_length) {
  return JointSpectralAmplitude::normalized(grid, single_crystal_tpa_values(grid, pump, crystal, crystal_length));
}

JointSpectralAmplitude build_interferometer_tpa(const FrequencyGrid& grid, const PumpConfig& pump,
                                                const PhaseMatchedCrystal& crystal, const Geometry& geometry,
                                                const InterferometerMedia& media,
                                                const InterferometerOptions& options) {
  return JointSpectralAmplitude::normalized(
      grid, interferometer_tpa_values(grid, pump, crystal, geometry, media, options));
}

double phase_lock(const PumpConfig& pump, const PhaseMatchedCrystal& crystal, const Geometry& geometry,
                  const InterferometerMedia& media, double lock_omega) {
  const double theta = cosine_argument(lock_omega, pump.omega() - lock_omega, crystal, geometry, media);
  return -std::remainder(theta, kTwoPi);
}

}  // namespace bsv
