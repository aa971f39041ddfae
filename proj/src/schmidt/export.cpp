#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "bsv/errors.hpp"
#include "bsv/schmidt.hpp"

namespace bsv {

void export_modes(const std::filesystem::path& dir, const SchmidtDecomposition& d,
                  const std::vector<GainState>& gains, std::size_t count) {
  std::filesystem::create_directories(dir);
  count = std::min(count, d.rank_kept);
  nlohmann::json manifest;
  manifest["grid"] = {{"points", d.grid.size()},
                      {"center_rad_per_fs", d.grid.center()},
                      {"step_rad_per_fs", d.grid.step()}};
  manifest["rank_kept"] = d.rank_kept;
  manifest["lambdas"] = std::vector<double>(d.lambdas.data(), d.lambdas.data() + d.lambdas.size());
  manifest["parity"] = d.parity;
  nlohmann::json files = nlohmann::json::array();
  char name[32];
  char line[160];
  for (std::size_t n = 0; n < count; ++n) {
    std::snprintf(name, sizeof name, "mode_%03zu.csv", n);
    std::ofstream out(dir / name);
    if (!out) throw Error("cannot write " + (dir / name).string());
    out << "omega_rad_per_fs,wavelength_nm,re_u,im_u\n";
    for (std::size_t j = 0; j < d.grid.size(); ++j) {
      const auto u = d.modes_s(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n));
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", d.grid.omega(j), d.grid.wavelength_nm(j),
                    u.real(), u.imag());
      out << line;
    }
    files.push_back({{"index", n}, {"file", name}, {"lambda", d.lambdas[static_cast<Eigen::Index>(n)]}});
  }
  manifest["mode_files"] = files;
  nlohmann::json per_gain = nlohmann::json::array();
  for (const GainState& g : gains) {
    per_gain.push_back({{"G", g.gain},
                        {"reference", gain_reference_name(g.reference)},
                        {"K", schmidt_number(g.weights)},
                        {"Lambdas", std::vector<double>(g.weights.data(), g.weights.data() + g.weights.size())}});
  }
  manifest["gains"] = per_gain;
  std::ofstream out(dir / "modes.json");
  if (!out) throw Error("cannot write " + (dir / "modes.json").string());
  out << manifest.dump(2) << "\n";
}

}  // namespace bsv
