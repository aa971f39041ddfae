#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <toml.hpp>

#include "bsv/scenario.hpp"

namespace bsv {

namespace {

std::string join_errors(const std::vector<FieldError>& errors) {
  std::string out = "invalid scenario configuration:";
  for (const auto& e : errors) out += "\n  " + e.path + ": " + e.message;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<FieldError> errors) : Error(join_errors(errors)), errors_(std::move(errors)) {}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

class Reader {
 public:
  std::vector<FieldError> errors;

  void fail(std::string path, std::string message) { errors.push_back({std::move(path), std::move(message)}); }

  const toml::table* table(const toml::table& parent, std::string_view key, const std::string& path, bool required) {
    const toml::node* n = parent.get(key);
    if (!n) {
      if (required) fail(path, "missing required table");
      return nullptr;
    }
    if (!n->is_table()) {
      fail(path, "expected a table");
      return nullptr;
    }
    return n->as_table();
  }

  std::optional<double> number(const toml::table& t, std::string_view key, const std::string& path,
                               const char* units, bool required) {
    const toml::node* n = t.get(key);
    if (!n) {
      if (required) fail(path, std::string("missing required value (") + units + ")");
      return std::nullopt;
    }
    if (!n->is_number()) {
      fail(path, std::string("expected a number (") + units + ")");
      return std::nullopt;
    }
    const double v = *n->value<double>();
    if (!std::isfinite(v)) {
      fail(path, std::string("must be finite (") + units + ")");
      return std::nullopt;
    }
    return v;
  }

  std::optional<std::int64_t> integer(const toml::table& t, std::string_view key, const std::string& path,
                                      bool required) {
    const toml::node* n = t.get(key);
    if (!n) {
      if (required) fail(path, "missing required integer");
      return std::nullopt;
    }
    if (!n->is_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return *n->value<std::int64_t>();
  }

  std::optional<std::string> string(const toml::table& t, std::string_view key, const std::string& path,
                                    bool required) {
    const toml::node* n = t.get(key);
    if (!n) {
      if (required) fail(path, "missing required string");
      return std::nullopt;
    }
    if (!n->is_string()) {
      fail(path, "expected a string");
      return std::nullopt;
    }
    return *n->value<std::string>();
  }

  std::optional<bool> boolean(const toml::table& t, std::string_view key, const std::string& path) {
    const toml::node* n = t.get(key);
    if (!n) return std::nullopt;
    if (!n->is_boolean()) {
      fail(path, "expected true or false");
      return std::nullopt;
    }
    return *n->value<bool>();
  }

  void known_keys(const toml::table& t, std::initializer_list<std::string_view> known, const std::string& prefix) {
    for (const auto& [k, v] : t) {
      bool found = false;
      for (auto name : known) found = found || k.str() == name;
      if (!found) fail(prefix.empty() ? std::string(k.str()) : prefix + "." + std::string(k.str()), "unknown key");
    }
  }

  // value > 0 (strict) or >= 0
  void positive(const std::optional<double>& v, const std::string& path, const char* units, bool strict = true) {
    if (!v) return;
    if (strict ? !(*v > 0.0) : !(*v >= 0.0))
      fail(path, std::string("must be ") + (strict ? "> 0" : ">= 0") + " " + units + " (got " + format_double(*v) + ")");
  }
};

std::optional<ScenarioConfig> read_table(const toml::table& root, Reader& rd) {
  ScenarioConfig c;
  rd.known_keys(root, {"name", "materials", "pump", "crystal", "interferometer", "lock", "gain", "grid", "schmidt",
                       "bands", "nrf", "analysis", "output"},
                "");
  c.name = rd.string(root, "name", "name", false).value_or("");
  c.materials = rd.string(root, "materials", "materials", false).value_or("");

  const MaterialTable* table = nullptr;
  std::optional<MaterialTable> loaded;
  try {
    if (c.materials.empty()) {
      table = &MaterialTable::bundled();
    } else {
      loaded = MaterialTable::load(c.materials);
      table = &*loaded;
    }
  } catch (const Error& e) {
    rd.fail("materials", e.what());
  }
  auto material = [&](const std::string& name, const std::string& path) {
    if (table && !table->contains(name)) rd.fail(path, "unknown material '" + name + "'");
  };

  if (const auto* t = rd.table(root, "pump", "pump", true)) {
    rd.known_keys(*t, {"wavelength_nm", "pulse_fwhm_fs", "tau_fs"}, "pump");
    const auto w = rd.number(*t, "wavelength_nm", "pump.wavelength_nm", "nm", true);
    rd.positive(w, "pump.wavelength_nm", "nm");
    c.pump.wavelength_nm = w.value_or(0.0);
    c.pump.pulse_fwhm_fs = rd.number(*t, "pulse_fwhm_fs", "pump.pulse_fwhm_fs", "fs", false);
    c.pump.tau_fs = rd.number(*t, "tau_fs", "pump.tau_fs", "fs", false);
    rd.positive(c.pump.pulse_fwhm_fs, "pump.pulse_fwhm_fs", "fs");
    rd.positive(c.pump.tau_fs, "pump.tau_fs", "fs");
    if (c.pump.pulse_fwhm_fs.has_value() == c.pump.tau_fs.has_value())
      rd.fail("pump.pulse_fwhm_fs", "give exactly one of pump.pulse_fwhm_fs or pump.tau_fs (fs)");
  }

  if (const auto* t = rd.table(root, "crystal", "crystal", true)) {
    rd.known_keys(*t, {"ordinary", "extraordinary", "length_mm"}, "crystal");
    c.crystal.ordinary = rd.string(*t, "ordinary", "crystal.ordinary", false).value_or(c.crystal.ordinary);
    c.crystal.extraordinary =
        rd.string(*t, "extraordinary", "crystal.extraordinary", false).value_or(c.crystal.extraordinary);
    material(c.crystal.ordinary, "crystal.ordinary");
    material(c.crystal.extraordinary, "crystal.extraordinary");
    const auto l = rd.number(*t, "length_mm", "crystal.length_mm", "mm", true);
    rd.positive(l, "crystal.length_mm", "mm");
    c.crystal.length_mm = l.value_or(0.0);
  }

  if (const auto* t = rd.table(root, "interferometer", "interferometer", false)) {
    InterferometerSection s;
    rd.known_keys(*t, {"gvd_material", "gvd_length_cm", "air_gap_cm", "pump_path_cm", "air_model"}, "interferometer");
    s.gvd_material = rd.string(*t, "gvd_material", "interferometer.gvd_material", false).value_or(s.gvd_material);
    material(s.gvd_material, "interferometer.gvd_material");
    const auto d = rd.number(*t, "gvd_length_cm", "interferometer.gvd_length_cm", "cm", true);
    rd.positive(d, "interferometer.gvd_length_cm", "cm", false);
    s.gvd_length_cm = d.value_or(0.0);
    const auto da = rd.number(*t, "air_gap_cm", "interferometer.air_gap_cm", "cm", false);
    rd.positive(da, "interferometer.air_gap_cm", "cm", false);
    s.air_gap_cm = da.value_or(0.0);
    s.pump_path_cm = rd.number(*t, "pump_path_cm", "interferometer.pump_path_cm", "cm", false);
    rd.positive(s.pump_path_cm, "interferometer.pump_path_cm", "cm", false);
    s.air_model = rd.string(*t, "air_model", "interferometer.air_model", false).value_or(s.air_model);
    if (s.air_model != "vacuum" && s.air_model != "standard_air")
      rd.fail("interferometer.air_model", "must be \"vacuum\" or \"standard_air\"");
    if (s.air_model == "standard_air") material("air", "interferometer.air_model");
    c.interferometer = s;
  }

  if (const auto* t = rd.table(root, "lock", "lock", false)) {
    rd.known_keys(*t,
                  {"group_delay_nm", "solve_at_gvd_length_cm", "group_delay_includes_crystal", "max_pump_path_cm",
                   "phase_lock_nm", "phase_offset_rad"},
                  "lock");
    c.lock.group_delay_nm = rd.number(*t, "group_delay_nm", "lock.group_delay_nm", "nm", false);
    rd.positive(c.lock.group_delay_nm, "lock.group_delay_nm", "nm");
    c.lock.solve_at_gvd_length_cm =
        rd.number(*t, "solve_at_gvd_length_cm", "lock.solve_at_gvd_length_cm", "cm", false);
    rd.positive(c.lock.solve_at_gvd_length_cm, "lock.solve_at_gvd_length_cm", "cm", false);
    c.lock.group_delay_includes_crystal =
        rd.boolean(*t, "group_delay_includes_crystal", "lock.group_delay_includes_crystal").value_or(true);
    const auto mx = rd.number(*t, "max_pump_path_cm", "lock.max_pump_path_cm", "cm", false);
    rd.positive(mx, "lock.max_pump_path_cm", "cm");
    c.lock.max_pump_path_cm = mx.value_or(c.lock.max_pump_path_cm);
    c.lock.phase_lock_nm = rd.number(*t, "phase_lock_nm", "lock.phase_lock_nm", "nm", false);
    rd.positive(c.lock.phase_lock_nm, "lock.phase_lock_nm", "nm");
    c.lock.phase_offset_rad = rd.number(*t, "phase_offset_rad", "lock.phase_offset_rad", "rad", false).value_or(0.0);

    if (!c.interferometer && (c.lock.group_delay_nm || c.lock.phase_lock_nm))
      rd.fail("lock", "group-delay and phase locks need an [interferometer] section");
    if (c.lock.solve_at_gvd_length_cm && !c.lock.group_delay_nm)
      rd.fail("lock.solve_at_gvd_length_cm", "only meaningful together with lock.group_delay_nm");
    if (c.lock.group_delay_nm && c.interferometer && c.interferometer->pump_path_cm)
      rd.fail("interferometer.pump_path_cm", "conflicts with lock.group_delay_nm (the pump path is solved)");
  }

  if (const auto* t = rd.table(root, "gain", "gain", true)) {
    rd.known_keys(*t, {"values", "reference"}, "gain");
    const toml::node* n = t->get("values");
    if (!n) {
      rd.fail("gain.values", "missing required list of parametric gains (dimensionless)");
    } else if (n->is_number()) {
      c.gain.values.push_back(*n->value<double>());
    } else if (const auto* arr = n->as_array()) {
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const toml::node& e = *arr->get(i);
        if (!e.is_number()) {
          rd.fail("gain.values[" + std::to_string(i) + "]", "expected a number");
          continue;
        }
        c.gain.values.push_back(*e.value<double>());
      }
      if (arr->size() == 0) rd.fail("gain.values", "needs at least one gain");
    } else {
      rd.fail("gain.values", "expected a number or a list of numbers");
    }
    for (std::size_t i = 0; i < c.gain.values.size(); ++i)
      if (!(c.gain.values[i] >= 0.0) || !std::isfinite(c.gain.values[i]))
        rd.fail("gain.values[" + std::to_string(i) + "]", "gain must be finite and >= 0");
    const std::string ref = rd.string(*t, "reference", "gain.reference", false).value_or("leading_mode");
    if (ref == "leading_mode")
      c.gain.reference = GainReference::LeadingMode;
    else if (ref == "total")
      c.gain.reference = GainReference::Total;
    else
      rd.fail("gain.reference", "must be \"leading_mode\" or \"total\"");
  }

  if (const auto* t = rd.table(root, "grid", "grid", false)) {
    rd.known_keys(*t, {"points", "half_span_rad_per_fs"}, "grid");
    if (const auto p = rd.integer(*t, "points", "grid.points", false)) {
      if (*p < 64)
        rd.fail("grid.points", "needs at least 64 points (got " + std::to_string(*p) + ")");
      else
        c.grid.points = static_cast<std::size_t>(*p);
    }
    const auto h = rd.number(*t, "half_span_rad_per_fs", "grid.half_span_rad_per_fs", "rad/fs", false);
    rd.positive(h, "grid.half_span_rad_per_fs", "rad/fs");
    c.grid.half_span_rad_per_fs = h.value_or(c.grid.half_span_rad_per_fs);
    if (c.pump.wavelength_nm > 0.0 &&
        c.grid.half_span_rad_per_fs >= 0.5 * omega_from_wavelength(Wavelength::from_nm(c.pump.wavelength_nm)))
      rd.fail("grid.half_span_rad_per_fs", "must be smaller than the degenerate frequency (rad/fs)");
  }

  if (const auto* t = rd.table(root, "schmidt", "schmidt", false)) {
    rd.known_keys(*t, {"truncation_tail", "max_rank", "degeneracy_tolerance"}, "schmidt");
    const auto tail = rd.number(*t, "truncation_tail", "schmidt.truncation_tail", "fraction", false);
    if (tail && !(*tail >= 0.0 && *tail < 1.0)) rd.fail("schmidt.truncation_tail", "must lie in [0, 1)");
    c.schmidt.truncation_tail = tail.value_or(c.schmidt.truncation_tail);
    if (const auto r = rd.integer(*t, "max_rank", "schmidt.max_rank", false)) {
      if (*r < 0)
        rd.fail("schmidt.max_rank", "must be >= 0 (0 means no cap)");
      else
        c.schmidt.max_rank = static_cast<std::size_t>(*r);
    }
    const auto tol = rd.number(*t, "degeneracy_tolerance", "schmidt.degeneracy_tolerance", "relative", false);
    if (tol && !(*tol > 0.0 && *tol < 1.0)) rd.fail("schmidt.degeneracy_tolerance", "must lie in (0, 1)");
    c.schmidt.degeneracy_tolerance = tol.value_or(c.schmidt.degeneracy_tolerance);
  }

  if (const toml::node* n = root.get("bands")) {
    const auto* arr = n->as_array();
    if (!arr) rd.fail("bands", "expected an array of tables ([[bands]])");
    for (std::size_t i = 0; arr && i < arr->size(); ++i) {
      const std::string path = "bands[" + std::to_string(i) + "]";
      const auto* t = arr->get(i)->as_table();
      if (!t) {
        rd.fail(path, "expected a table");
        continue;
      }
      rd.known_keys(*t, {"name", "lower_nm", "upper_nm"}, path);
      NamedBand b;
      b.name = rd.string(*t, "name", path + ".name", true).value_or("");
      const auto lo = rd.number(*t, "lower_nm", path + ".lower_nm", "nm", true);
      const auto hi = rd.number(*t, "upper_nm", path + ".upper_nm", "nm", true);
      rd.positive(lo, path + ".lower_nm", "nm");
      rd.positive(hi, path + ".upper_nm", "nm");
      if (lo && hi && !(*lo < *hi)) rd.fail(path, "lower_nm must be below upper_nm");
      b.lower_nm = lo.value_or(0.0);
      b.upper_nm = hi.value_or(0.0);
      for (const auto& other : c.bands)
        if (other.name == b.name) rd.fail(path + ".name", "duplicate band name '" + b.name + "'");
      c.bands.push_back(b);
    }
  }

  if (const auto* t = rd.table(root, "nrf", "nrf", false)) {
    rd.known_keys(*t, {"mode", "signal_band", "idler_band"}, "nrf");
    const std::string mode = rd.string(*t, "mode", "nrf.mode", true).value_or("none");
    if (mode == "none")
      c.nrf.mode = NrfMode::None;
    else if (mode == "bands")
      c.nrf.mode = NrfMode::Bands;
    else if (mode == "inter_peak_minimum")
      c.nrf.mode = NrfMode::SplitMinimum;
    else if (mode == "degenerate")
      c.nrf.mode = NrfMode::SplitDegenerate;
    else
      rd.fail("nrf.mode", "must be one of \"none\", \"bands\", \"inter_peak_minimum\", \"degenerate\"");
    c.nrf.signal_band = rd.string(*t, "signal_band", "nrf.signal_band", c.nrf.mode == NrfMode::Bands).value_or("");
    c.nrf.idler_band = rd.string(*t, "idler_band", "nrf.idler_band", c.nrf.mode == NrfMode::Bands).value_or("");
    if (c.nrf.mode == NrfMode::Bands) {
      const NamedBand* s = nullptr;
      const NamedBand* i = nullptr;
      for (const auto& b : c.bands) {
        if (b.name == c.nrf.signal_band) s = &b;
        if (b.name == c.nrf.idler_band) i = &b;
      }
      if (!s) rd.fail("nrf.signal_band", "no band named '" + c.nrf.signal_band + "'");
      if (!i) rd.fail("nrf.idler_band", "no band named '" + c.nrf.idler_band + "'");
      if (s && i && s->lower_nm < i->upper_nm && i->lower_nm < s->upper_nm)
        rd.fail("nrf", "signal and idler bands overlap");
    }
  }

  if (const auto* t = rd.table(root, "analysis", "analysis", false)) {
    rd.known_keys(*t, {"peak_threshold", "peak_merge_gap_rad_per_fs"}, "analysis");
    const auto th = rd.number(*t, "peak_threshold", "analysis.peak_threshold", "fraction of max", false);
    if (th && !(*th > 0.0 && *th < 0.5)) rd.fail("analysis.peak_threshold", "must lie in (0, 0.5)");
    c.analysis.peak_threshold = th.value_or(c.analysis.peak_threshold);
    const auto gap = rd.number(*t, "peak_merge_gap_rad_per_fs", "analysis.peak_merge_gap_rad_per_fs", "rad/fs", false);
    rd.positive(gap, "analysis.peak_merge_gap_rad_per_fs", "rad/fs", false);
    c.analysis.peak_merge_gap_rad_per_fs = gap.value_or(c.analysis.peak_merge_gap_rad_per_fs);
  }

  if (const auto* t = rd.table(root, "output", "output", false)) {
    rd.known_keys(*t, {"modes", "tpa_dump"}, "output");
    if (const auto m = rd.integer(*t, "modes", "output.modes", false)) {
      if (*m < 0)
        rd.fail("output.modes", "must be >= 0");
      else
        c.output.modes = static_cast<std::size_t>(*m);
    }
    c.output.tpa_dump = rd.boolean(*t, "tpa_dump", "output.tpa_dump").value_or(false);
  }

  if (!rd.errors.empty()) return std::nullopt;
  return c;
}

ValidationResult validate_table(const toml::table& root) {
  Reader rd;
  ValidationResult out;
  out.config = read_table(root, rd);
  out.errors = std::move(rd.errors);
  return out;
}

}  // namespace

ValidationResult validate_config(std::string_view text) {
  toml::table root;
  try {
    root = toml::parse(text);
  } catch (const toml::parse_error& e) {
    std::ostringstream where;
    where << "line " << e.source().begin.line << ", column " << e.source().begin.column;
    return {std::nullopt, {{where.str(), std::string(e.description())}}};
  }
  return validate_table(root);
}

ScenarioConfig parse_config(std::string_view text) {
  ValidationResult v = validate_config(text);
  if (!v.ok()) throw ConfigError(std::move(v.errors));
  return *v.config;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({{path.string(), "cannot open scenario file"}});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize(const ScenarioConfig& c) {
  std::ostringstream os;
  auto num = [&](const char* key, double v) { os << key << " = " << format_double(v) << "\n"; };
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) num(key, *v);
  };
  os << "name = " << quote(c.name) << "\n";
  if (!c.materials.empty()) os << "materials = " << quote(c.materials) << "\n";

  os << "\n[pump]\n";
  num("wavelength_nm", c.pump.wavelength_nm);
  opt("pulse_fwhm_fs", c.pump.pulse_fwhm_fs);
  opt("tau_fs", c.pump.tau_fs);

  os << "\n[crystal]\n";
  os << "ordinary = " << quote(c.crystal.ordinary) << "\n";
  os << "extraordinary = " << quote(c.crystal.extraordinary) << "\n";
  num("length_mm", c.crystal.length_mm);

  if (c.interferometer) {
    const auto& s = *c.interferometer;
    os << "\n[interferometer]\n";
    os << "gvd_material = " << quote(s.gvd_material) << "\n";
    num("gvd_length_cm", s.gvd_length_cm);
    num("air_gap_cm", s.air_gap_cm);
    opt("pump_path_cm", s.pump_path_cm);
    os << "air_model = " << quote(s.air_model) << "\n";
  }

  os << "\n[lock]\n";
  opt("group_delay_nm", c.lock.group_delay_nm);
  opt("solve_at_gvd_length_cm", c.lock.solve_at_gvd_length_cm);
  os << "group_delay_includes_crystal = " << (c.lock.group_delay_includes_crystal ? "true" : "false") << "\n";
  num("max_pump_path_cm", c.lock.max_pump_path_cm);
  opt("phase_lock_nm", c.lock.phase_lock_nm);
  num("phase_offset_rad", c.lock.phase_offset_rad);

  os << "\n[gain]\nvalues = [";
  for (std::size_t i = 0; i < c.gain.values.size(); ++i) os << (i ? ", " : "") << format_double(c.gain.values[i]);
  os << "]\nreference = " << quote(std::string(gain_reference_name(c.gain.reference))) << "\n";

  os << "\n[grid]\npoints = " << c.grid.points << "\n";
  num("half_span_rad_per_fs", c.grid.half_span_rad_per_fs);

  os << "\n[schmidt]\n";
  num("truncation_tail", c.schmidt.truncation_tail);
  os << "max_rank = " << c.schmidt.max_rank << "\n";
  num("degeneracy_tolerance", c.schmidt.degeneracy_tolerance);

  for (const auto& b : c.bands) {
    os << "\n[[bands]]\nname = " << quote(b.name) << "\n";
    num("lower_nm", b.lower_nm);
    num("upper_nm", b.upper_nm);
  }

  static const char* modes[] = {"none", "bands", "inter_peak_minimum", "degenerate"};
  os << "\n[nrf]\nmode = " << quote(modes[static_cast<int>(c.nrf.mode)]) << "\n";
  if (c.nrf.mode == NrfMode::Bands)
    os << "signal_band = " << quote(c.nrf.signal_band) << "\nidler_band = " << quote(c.nrf.idler_band) << "\n";

  os << "\n[analysis]\n";
  num("peak_threshold", c.analysis.peak_threshold);
  num("peak_merge_gap_rad_per_fs", c.analysis.peak_merge_gap_rad_per_fs);

  os << "\n[output]\nmodes = " << c.output.modes << "\ntpa_dump = " << (c.output.tpa_dump ? "true" : "false")
     << "\n";
  return os.str();
}

std::string config_hash(const ScenarioConfig& c) {
  const std::string text = serialize(c);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

ScenarioConfig with_override(const ScenarioConfig& c, std::string_view path, double value) {
  toml::table root = toml::parse(serialize(c));
  toml::node_view<toml::node> node = root.at_path(path);
  if (!node || !node.is_number())
    throw ConfigError({{std::string(path), "does not name a numeric field of this scenario"}});
  if (node.is_integer()) {
    if (std::floor(value) != value)
      throw ConfigError({{std::string(path), "integer field cannot take " + format_double(value)}});
    *node.as_integer() = static_cast<std::int64_t>(value);
  } else {
    *node.as_floating_point() = value;
  }
  ValidationResult v = validate_table(root);
  if (!v.ok()) throw ConfigError(std::move(v.errors));
  return *v.config;
}

const MaterialTable& materials_for(const ScenarioConfig& c) {
  if (c.materials.empty()) return MaterialTable::bundled();
  static std::mutex mu;
  static std::map<std::string, MaterialTable> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(c.materials);
  if (it == cache.end()) it = cache.emplace(c.materials, MaterialTable::load(c.materials)).first;
  return it->second;
}

}  // namespace bsv
