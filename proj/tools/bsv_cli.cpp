#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bsv/scenario.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kNumerical = 2;

int report_config_error(const bsv::ConfigError& e) {
  for (const auto& f : e.errors()) std::cerr << "error: " << f.path << ": " << f.message << "\n";
  return kInvalid;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bsv::ConfigError("<file>", "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bright squeezed vacuum in a nonlinear interferometer"};
  app.set_version_flag("--version", BSV_VERSION);
  app.require_subcommand(1);

  std::string file;
  std::string out = "out";

  auto* run = app.add_subcommand("run", "Run a scenario and write report.json, spectra and modes");
  run->add_option("file", file, "Scenario TOML")->required();
  run->add_option("--out", out, "Output directory");

  std::string param;
  std::string values;
  std::size_t jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Sweep one numeric parameter and write sweep.csv");
  sweep->add_option("file", file, "Scenario TOML")->required();
  sweep->add_option("--param", param, "Dotted key, e.g. interferometer.gvd_length_cm or gain")->required();
  sweep->add_option("--values", values, "a,b,c or linspace:start:stop:count")->required();
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out, "Output directory");

  std::string medium;
  double pump_nm = 0.0;
  std::string materials;
  auto* period = app.add_subcommand("period", "Analytic fringe period of a dispersive medium in cm");
  period->add_option("medium", medium, "Material name")->required();
  period->add_option("pump_nm", pump_nm, "Pump wavelength in nm")->required();
  period->add_option("--materials", materials, "Material table JSON");

  auto* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("file", file, "Scenario TOML")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) {
      const auto result = bsv::validate_config(read_file(file));
      if (!result.ok()) return report_config_error(bsv::ConfigError(result.errors));
      std::cout << "ok " << bsv::config_hash(*result.config) << "\n";
      return kOk;
    }
    if (*period) {
      const bsv::MaterialTable table =
          materials.empty() ? bsv::MaterialTable::bundled() : bsv::MaterialTable::load(materials);
      const bsv::Length p = bsv::analytic_period(table.at(medium), bsv::Wavelength::from_nm(pump_nm));
      std::printf("%.9g\n", p.cm());
      return kOk;
    }
    const bsv::ScenarioConfig config = bsv::parse_config(read_file(file));
    if (*run) {
      const bsv::ScenarioResult r = bsv::run_scenario(config);
      bsv::write_outputs(r, out);
      for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << out << "/report.json\n";
      return kOk;
    }
    if (*sweep) {
      const auto rows = bsv::run_sweep(config, {param, bsv::parse_values(values), jobs});
      std::filesystem::create_directories(out);
      bsv::write_sweep_csv(std::filesystem::path(out) / "sweep.csv", rows);
      std::size_t failed = 0;
      for (const auto& r : rows) failed += !r.error.empty();
      std::cout << out << "/sweep.csv (" << rows.size() - failed << " ok, " << failed << " failed)\n";
      return failed == rows.size() ? kNumerical : kOk;
    }
  } catch (const bsv::ConfigError& e) {
    return report_config_error(e);
  } catch (const bsv::RangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
