#include <cstdio>
#include <fstream>
#include <numbers>

#include <json.hpp>

#include "bsv/scenario.hpp"

namespace bsv {
namespace {

using nlohmann::json;

json band_json(const SpectralBand& b) {
  return {{"lower_rad_per_fs", b.lower},
          {"upper_rad_per_fs", b.upper},
          {"lower_nm", wavelength_nm_from_omega(b.upper)},
          {"upper_nm", wavelength_nm_from_omega(b.lower)}};
}

json peak_json(const Peak& p) {
  return {{"omega_rad_per_fs", p.omega},   {"wavelength_nm", p.wavelength_nm}, {"height", p.height},
          {"fwhm_rad_per_fs", p.fwhm_rad_per_fs}, {"fwhm_nm", p.fwhm_nm}};
}

std::string gain_label(double g) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", g);
  return buf;
}

std::string spectrum_file(const ScenarioResult& r, std::size_t i) {
  return r.gains.size() == 1 ? "spectrum.csv" : "spectrum_G" + gain_label(r.gains[i].gain) + ".csv";
}

}  // namespace

std::string report_json(const ScenarioResult& r) {
  const SchmidtDecomposition& d = r.decomposition;
  json j;
  j["scenario"] = r.config.name;
  j["config_hash"] = r.hash;
  j["material_table_version"] = r.material_table_version;
  j["library_version"] = BSV_VERSION;
  j["pump"] = {{"omega_rad_per_fs", r.omega_p}, {"wavelength_nm", wavelength_nm_from_omega(r.omega_p)}};
  j["crystal"] = {{"phase_matching_angle_deg", r.theta_rad * 180.0 / std::numbers::pi},
                  {"length_mm", r.geometry.crystal_length.mm()}};
  if (r.interferometer)
    j["geometry"] = {{"gvd_length_cm", r.geometry.gvd_length.cm()},
                     {"air_gap_cm", r.geometry.air_gap.cm()},
                     {"pump_path_cm", r.geometry.pump_path.cm()},
                     {"phase_offset_rad", r.phase_offset}};
  j["grid"] = {{"points", d.grid.size()},
               {"center_rad_per_fs", d.grid.center()},
               {"half_span_rad_per_fs", d.grid.half_span()},
               {"step_rad_per_fs", d.grid.step()},
               {"edge_fraction", r.edge_fraction}};
  const std::size_t shown = std::min<std::size_t>(d.rank_kept, 32);
  j["schmidt"] = {{"rank_kept", d.rank_kept},
                  {"kept_weight", d.lambdas.sum()},
                  {"lambdas", std::vector<double>(d.lambdas.data(), d.lambdas.data() + shown)},
                  {"pairing_spread", d.pairing_spread},
                  {"gain_reference", gain_reference_name(r.config.gain.reference)}};
  json results = json::array();
  for (std::size_t i = 0; i < r.gains.size(); ++i) {
    const GainResult& g = r.gains[i];
    json e = {{"G", g.gain},
              {"K", g.schmidt_number},
              {"g2", g.g2},
              {"total_mean_photons", g.total_mean_photons},
              {"spectrum_file", spectrum_file(r, i)}};
    json peaks = json::array();
    for (const Peak& p : g.peaks.peaks) peaks.push_back(peak_json(p));
    e["peaks"] = peaks;
    if (g.main_peak) {
      e["fwhm_nm"] = g.main_peak->fwhm_nm;
      e["fwhm_rad_per_fs"] = g.main_peak->fwhm_rad_per_fs;
    }
    if (g.peaks.separation_nm) e["peak_separation_nm"] = *g.peaks.separation_nm;
    json nrfs = json::array();
    for (const NrfResult& n : g.nrf)
      nrfs.push_back({{"split", n.split},
                      {"signal_band", band_json(n.signal)},
                      {"idler_band", band_json(n.idler)},
                      {"nrf", n.value},
                      {"mean_signal", n.mean_signal},
                      {"mean_idler", n.mean_idler},
                      {"difference_variance", n.difference_variance}});
    e["nrf"] = nrfs;
    e["notes"] = g.notes;
    results.push_back(e);
  }
  j["results"] = results;
  j["warnings"] = r.warnings;
  return j.dump(2) + "\n";
}

void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "omega_rad_per_fs,wavelength_nm,intensity\n";
  char line[96];
  for (std::size_t j = 0; j < s.values.size(); ++j) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", s.grid.omega(j), s.grid.wavelength_nm(j), s.values[j]);
    out << line;
  }
}

void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "report.json");
    if (!out) throw Error("cannot write " + (dir / "report.json").string());
    out << report_json(r);
  }
  for (std::size_t i = 0; i < r.gains.size(); ++i) write_spectrum_csv(dir / spectrum_file(r, i), r.gains[i].spectrum);
  if (r.config.output.modes > 0) export_modes(dir, r.decomposition, r.gain_states, r.config.output.modes);
  if (r.config.output.tpa_dump)
    write_tpa(dir / "tpa.bin", build_tpa(r.config), {{"scenario", r.config.name}, {"config_hash", r.hash}});
}

}  // namespace bsv
