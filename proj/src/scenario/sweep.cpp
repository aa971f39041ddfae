#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include "bsv/scenario.hpp"

namespace bsv {
namespace {

double parse_number(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError("sweep.values", "not a number: '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

SweepMetrics metrics_of(const GainResult& g) {
  SweepMetrics m;
  m.gain = g.gain;
  m.schmidt_number = g.schmidt_number;
  m.g2 = g.g2;
  m.fwhm_nm = g.main_peak ? g.main_peak->fwhm_nm : std::numeric_limits<double>::quiet_NaN();
  m.nrf = g.nrf.empty() ? std::numeric_limits<double>::quiet_NaN() : g.nrf.front().value;
  return m;
}

bool is_gain_path(std::string_view p) { return p == "gain" || p == "gain.values"; }

template <class F>
void parallel_for(std::size_t n, std::size_t jobs, F&& body) {
  jobs = std::max<std::size_t>(1, std::min(jobs, n));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) body(i);
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<double> parse_values(std::string_view spec) {
  if (spec.starts_with("linspace:")) {
    const auto parts = split(spec.substr(9), ':');
    if (parts.size() != 3) throw ConfigError("sweep.values", "expected linspace:start:stop:count");
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    const double count = parse_number(parts[2]);
    if (count < 1 || count != std::floor(count))
      throw ConfigError("sweep.values", "linspace count must be a positive integer");
    const auto n = static_cast<std::size_t>(count);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? a : a + (b - a) * double(i) / double(n - 1);
    return out;
  }
  std::vector<double> out;
  for (auto part : split(spec, ',')) out.push_back(parse_number(part));
  if (out.empty()) throw ConfigError("sweep.values", "no values");
  return out;
}

std::vector<SweepRow> run_sweep(const ScenarioConfig& config, const SweepSpec& sweep) {
  std::vector<SweepRow> rows(sweep.values.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].value = sweep.values[i];

  if (is_gain_path(sweep.path)) {
    // One decomposition serves every gain.
    ScenarioConfig c = config;
    c.gain.values = sweep.values;
    for (double g : c.gain.values)
      if (!(g >= 0.0)) throw ConfigError("gain.values", "gain must be >= 0");
    const ScenarioResult r = run_scenario(c);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].gains.push_back(metrics_of(r.gains[i]));
    return rows;
  }

  // Resolve the path once so a bad key fails before any work starts.
  (void)with_override(config, sweep.path, sweep.values.empty() ? 0.0 : sweep.values.front());
  parallel_for(rows.size(), sweep.jobs, [&](std::size_t i) {
    try {
      const ScenarioResult r = run_scenario(with_override(config, sweep.path, rows[i].value));
      for (const GainResult& g : r.gains) rows[i].gains.push_back(metrics_of(g));
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
  });
  return rows;
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "value,K,g2,fwhm_nm,nrf,status\n";
  char buf[160];
  for (const SweepRow& r : rows) {
    if (!r.error.empty() || r.gains.empty()) {
      std::string msg = r.error.empty() ? "no result" : r.error;
      for (char& ch : msg)
        if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
      std::snprintf(buf, sizeof buf, "%.17g,nan,nan,nan,nan,", r.value);
      out << buf << "error: " << msg << "\n";
      continue;
    }
    const SweepMetrics& m = r.gains.front();
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,ok\n", r.value, m.schmidt_number, m.g2, m.fwhm_nm,
                  m.nrf);
    out << buf;
  }
}

}  // namespace bsv
