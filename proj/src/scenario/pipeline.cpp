#include <cmath>
#include <limits>
#include <sstream>

#include "bsv/scenario.hpp"

namespace bsv {
namespace {

PumpConfig pump_of(const ScenarioConfig& c) {
  const Wavelength w = Wavelength::from_nm(c.pump.wavelength_nm);
  return c.pump.tau_fs ? PumpConfig{w, *c.pump.tau_fs} : PumpConfig::from_intensity_fwhm(w, *c.pump.pulse_fwhm_fs);
}

struct Setup {
  PumpConfig pump;
  PhaseMatchedCrystal crystal;
  Geometry geometry;
  InterferometerMedia media;
  double offset = 0.0;
  FrequencyGrid grid;
};

Setup prepare(const ScenarioConfig& c) {
  const MaterialTable& table = materials_for(c);
  Setup s;
  s.pump = pump_of(c);
  s.crystal = phase_match_type1(table.at(c.crystal.ordinary), table.at(c.crystal.extraordinary), s.pump.wavelength);
  s.geometry.crystal_length = Length::from_mm(c.crystal.length_mm);
  s.grid = FrequencyGrid::symmetric(0.5 * s.pump.omega(), c.grid.points, c.grid.half_span_rad_per_fs);
  if (!c.interferometer) return s;

  const InterferometerSection& ifm = *c.interferometer;
  s.media.gvd = table.at(ifm.gvd_material);
  s.media.air = ifm.air_model == "standard_air" ? table.at("air") : Material::vacuum();
  s.geometry.gvd_length = Length::from_cm(ifm.gvd_length_cm);
  s.geometry.air_gap = Length::from_cm(ifm.air_gap_cm);
  s.geometry.pump_path = Length::from_cm(ifm.pump_path_cm.value_or(0.0));

  if (c.lock.group_delay_nm) {
    GroupDelayOptions opt;
    opt.include_crystal = c.lock.group_delay_includes_crystal;
    opt.max_pump_path = Length::from_cm(c.lock.max_pump_path_cm);
    Geometry solve = s.geometry;
    if (c.lock.solve_at_gvd_length_cm) solve.gvd_length = Length::from_cm(*c.lock.solve_at_gvd_length_cm);
    const double target = omega_from_wavelength(Wavelength::from_nm(*c.lock.group_delay_nm));
    s.geometry.pump_path = find_pump_path(target, s.pump.omega(), s.crystal, solve, s.media, opt);
  }
  if (c.lock.phase_lock_nm) {
    const double lock = omega_from_wavelength(Wavelength::from_nm(*c.lock.phase_lock_nm));
    s.offset = phase_lock(s.pump, s.crystal, s.geometry, s.media, lock);
  }
  s.offset += c.lock.phase_offset_rad;
  return s;
}

JointSpectralAmplitude tpa_from(const ScenarioConfig& c, const Setup& s) {
  if (!c.interferometer) return build_single_crystal_tpa(s.grid, s.pump, s.crystal, s.geometry.crystal_length);
  InterferometerOptions opt;
  opt.phase_offset = s.offset;
  return build_interferometer_tpa(s.grid, s.pump, s.crystal, s.geometry, s.media, opt);
}

SpectralBand whole_below(const FrequencyGrid& g, double split) { return {g.omega(0), split}; }
SpectralBand whole_above(const FrequencyGrid& g, double split) {
  return {split, g.omega(g.size() - 1) + 0.5 * g.step()};
}

NrfResult nrf_for(const SchmidtDecomposition& d, const GainState& g, const SpectralBand& a, const SpectralBand& b,
                  std::string split) {
  const BandPairMoments m = band_pair_moments(d, ModeMoments::squeezed(g), a, b);
  NrfResult r;
  r.split = std::move(split);
  r.signal = a;
  r.idler = b;
  r.mean_signal = m.a.mean;
  r.mean_idler = m.b.mean;
  r.difference_variance = m.difference_variance;
  r.value = nrf(d, g, a, b);
  return r;
}

}  // namespace

JointSpectralAmplitude build_tpa(const ScenarioConfig& config, ScenarioResult* context) {
  const Setup s = prepare(config);
  if (context) {
    context->omega_p = s.pump.omega();
    context->theta_rad = s.crystal.theta_rad;
    context->interferometer = config.interferometer.has_value();
    context->geometry = s.geometry;
    context->phase_offset = s.offset;
  }
  return tpa_from(config, s);
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioResult r;
  r.config = config;
  r.hash = config_hash(config);
  r.material_table_version = materials_for(config).version();

  const JointSpectralAmplitude tpa = build_tpa(config, &r);
  r.edge_fraction = edge_fraction(tpa);
  if (r.edge_fraction > 1e-4) {
    std::ostringstream os;
    os << "marginal at the grid edge is " << r.edge_fraction << " of its peak (above 1e-4); widen grid.half_span_rad_per_fs";
    r.warnings.push_back(os.str());
  }

  DecomposeOptions opt;
  opt.truncation = {config.schmidt.truncation_tail, config.schmidt.max_rank};
  opt.degeneracy_tolerance = config.schmidt.degeneracy_tolerance;
  r.decomposition = decompose(tpa, opt);
  const SchmidtDecomposition& d = r.decomposition;
  const PeakPolicy policy{config.analysis.peak_threshold, config.analysis.peak_merge_gap_rad_per_fs};

  for (double G : config.gain.values) {
    GainState state = redistribute(d, G, config.gain.reference);
    GainResult g;
    g.gain = G;
    g.schmidt_number = schmidt_number(state.weights);
    g.g2 = g2_integral(state);
    g.total_mean_photons = state.mean_photons.sum();
    g.spectrum = spectrum(d, state, SpectrumScale::PeakNormalized);
    try {
      g.peaks = find_peaks(g.spectrum, policy);
      g.main_peak = fwhm(g.spectrum, policy);
    } catch (const EdgeError& e) {
      g.notes.push_back(e.what());
    }

    if (config.nrf.mode != NrfMode::None && G > 0.0) {
      const double center = d.grid.center();
      try {
        if (config.nrf.mode == NrfMode::Bands) {
          const NamedBand* s = nullptr;
          const NamedBand* i = nullptr;
          for (const auto& b : config.bands) {
            if (b.name == config.nrf.signal_band) s = &b;
            if (b.name == config.nrf.idler_band) i = &b;
          }
          g.nrf.push_back(nrf_for(d, state, SpectralBand::from_wavelengths_nm(s->lower_nm, s->upper_nm),
                                  SpectralBand::from_wavelengths_nm(i->lower_nm, i->upper_nm), "bands"));
        } else if (config.nrf.mode == NrfMode::SplitMinimum) {
          if (g.peaks.split_index) {
            const double split = d.grid.omega(*g.peaks.split_index);
            g.nrf.push_back(
                nrf_for(d, state, whole_below(d.grid, split), whole_above(d.grid, split), "inter_peak_minimum"));
          } else {
            g.notes.push_back("NRF with inter-peak split needs two peaks; using the degenerate split");
          }
        }
        if (config.nrf.mode != NrfMode::Bands)
          g.nrf.push_back(
              nrf_for(d, state, whole_below(d.grid, center), whole_above(d.grid, center), "degenerate"));
      } catch (const Error& e) {
        g.notes.push_back(std::string("NRF: ") + e.what());
      }
    }
    r.gain_states.push_back(std::move(state));
    r.gains.push_back(std::move(g));
  }
  return r;
}

Length analytic_period(const Material& medium, Wavelength pump) {
  const double half = 0.5 * omega_from_wavelength(pump);
  const double k = wavevector(medium, half);
  return Length{kTwoPi / (2.0 * k)};
}

}  // namespace bsv
