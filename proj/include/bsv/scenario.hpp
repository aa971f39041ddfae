#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bsv/errors.hpp"
#include "bsv/observables.hpp"

namespace bsv {

// Units are part of every field name; nm, fs, mm, cm, rad/fs, rad.
struct PumpSection {
  double wavelength_nm = 0.0;
  std::optional<double> pulse_fwhm_fs;  // intensity FWHM, exactly one of these two
  std::optional<double> tau_fs;

  bool operator==(const PumpSection&) const = default;
};

struct CrystalSection {
  std::string ordinary = "BBO_o";
  std::string extraordinary = "BBO_e";
  double length_mm = 0.0;

  bool operator==(const CrystalSection&) const = default;
};

struct InterferometerSection {
  std::string gvd_material = "SF6";
  double gvd_length_cm = 0.0;
  double air_gap_cm = 0.0;
  std::optional<double> pump_path_cm;  // explicit d0; otherwise solved or 0
  std::string air_model = "vacuum";    // "vacuum" | "standard_air"

  bool operator==(const InterferometerSection&) const = default;
};

struct LockSection {
  std::optional<double> group_delay_nm;          // solve d0 for this signal wavelength
  std::optional<double> solve_at_gvd_length_cm;  // GVD length used in that solve (default: actual)
  bool group_delay_includes_crystal = true;
  double max_pump_path_cm = 1000.0;
  std::optional<double> phase_lock_nm;           // amplification lock at this signal wavelength
  double phase_offset_rad = 0.0;                 // added after the lock

  bool operator==(const LockSection&) const = default;
};

struct GainSection {
  std::vector<double> values;
  GainReference reference = GainReference::LeadingMode;

  bool operator==(const GainSection&) const = default;
};

struct GridSection {
  std::size_t points = 512;
  double half_span_rad_per_fs = 0.2;

  bool operator==(const GridSection&) const = default;
};

struct SchmidtSection {
  double truncation_tail = 1e-8;
  std::size_t max_rank = 0;
  double degeneracy_tolerance = 1e-3;

  bool operator==(const SchmidtSection&) const = default;
};

struct NamedBand {
  std::string name;
  double lower_nm = 0.0;
  double upper_nm = 0.0;

  bool operator==(const NamedBand&) const = default;
};

enum class NrfMode { None, Bands, SplitMinimum, SplitDegenerate };

struct NrfSection {
  NrfMode mode = NrfMode::None;
  std::string signal_band;  // NrfMode::Bands
  std::string idler_band;

  bool operator==(const NrfSection&) const = default;
};

struct AnalysisSection {
  double peak_threshold = 0.1;
  double peak_merge_gap_rad_per_fs = 0.005;

  bool operator==(const AnalysisSection&) const = default;
};

struct OutputSection {
  std::size_t modes = 3;
  bool tpa_dump = false;

  bool operator==(const OutputSection&) const = default;
};

struct ScenarioConfig {
  std::string name;
  std::string materials;  // table path; empty: bundled table
  PumpSection pump;
  CrystalSection crystal;
  std::optional<InterferometerSection> interferometer;
  LockSection lock;
  GainSection gain;
  GridSection grid;
  SchmidtSection schmidt;
  std::vector<NamedBand> bands;
  NrfSection nrf;
  AnalysisSection analysis;
  OutputSection output;

  bool operator==(const ScenarioConfig&) const = default;
};

struct ValidationResult {
  std::optional<ScenarioConfig> config;
  std::vector<FieldError> errors;
  bool ok() const { return config.has_value(); }
};

// Parses and validates; every problem is reported, with field path and units.
ValidationResult validate_config(std::string_view text);
ScenarioConfig parse_config(std::string_view text);  // throws ConfigError
ScenarioConfig load_config(const std::filesystem::path& path);

// Canonical TOML; parse_config(serialize(c)) == c.
std::string serialize(const ScenarioConfig& c);
std::string config_hash(const ScenarioConfig& c);  // SHA-256 hex of serialize(c)

// Copy with one numeric field replaced; the path is a dotted TOML key such as
// "interferometer.gvd_length_cm". Throws ConfigError when it does not resolve.
ScenarioConfig with_override(const ScenarioConfig& c, std::string_view path, double value);

struct NrfResult {
  std::string split;  // "bands", "inter_peak_minimum" or "degenerate"
  SpectralBand signal;
  SpectralBand idler;
  double value = 0.0;
  double mean_signal = 0.0;
  double mean_idler = 0.0;
  double difference_variance = 0.0;
};

struct GainResult {
  double gain = 0.0;
  double schmidt_number = 0.0;
  double g2 = 0.0;
  double total_mean_photons = 0.0;
  Spectrum spectrum;  // peak-normalized
  PeakAnalysis peaks;
  std::optional<Peak> main_peak;
  std::vector<NrfResult> nrf;  // first entry is the configured one
  std::vector<std::string> notes;
};

struct ScenarioResult {
  ScenarioConfig config;
  std::string hash;
  std::string material_table_version;
  double omega_p = 0.0;
  double theta_rad = 0.0;
  bool interferometer = false;
  Geometry geometry;
  double phase_offset = 0.0;
  double edge_fraction = 0.0;
  SchmidtDecomposition decomposition;
  std::vector<GainState> gain_states;
  std::vector<GainResult> gains;
  std::vector<std::string> warnings;
};

// Deterministic pipeline: dispersion, pump-path solve, phase lock, TPA,
// decomposition, per-gain observables.
ScenarioResult run_scenario(const ScenarioConfig& config);
JointSpectralAmplitude build_tpa(const ScenarioConfig& config, ScenarioResult* context = nullptr);

std::string report_json(const ScenarioResult& r);
// report.json, spectrum CSVs (spectrum.csv for one gain, spectrum_G<g>.csv
// for several), mode files and optionally tpa.bin.
void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir);
void write_spectrum_csv(const std::filesystem::path& path, const Spectrum& s);

struct SweepSpec {
  std::string path;
  std::vector<double> values;
  std::size_t jobs = 1;
};

// "a,b,c" or "linspace:start:stop:count".
std::vector<double> parse_values(std::string_view spec);

struct SweepMetrics {
  double gain = 0.0;
  double schmidt_number = 0.0;
  double g2 = 0.0;
  double fwhm_nm = 0.0;
  double nrf = 0.0;  // NaN when not configured
};

struct SweepRow {
  double value = 0.0;
  std::string error;  // empty on success
  std::vector<SweepMetrics> gains;
};

// One row per value, in input order; per-point failures land in the row.
std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const SweepSpec& sweep);
// Columns value,K,g2,fwhm_nm,nrf,status for the first configured gain.
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

// Analytic fringe period 2 pi / (k_s + k_i) of a GVD medium at the degenerate frequency.
Length analytic_period(const Material& medium, Wavelength pump);

const MaterialTable& materials_for(const ScenarioConfig& c);

}  // namespace bsv
