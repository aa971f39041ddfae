#include <bit>
#include <cstdint>
#include <fstream>

#include <json.hpp>

#include "bsv/errors.hpp"
#include "bsv/jsa.hpp"

namespace bsv {
namespace {

constexpr char kMagic[8] = {'B', 'S', 'V', 'T', 'P', 'A', '1', '\n'};

static_assert(std::endian::native == std::endian::little, "TPA dump format is little-endian");

}  // namespace

void write_tpa(const std::filesystem::path& path, const JointSpectralAmplitude& tpa,
               const std::map<std::string, std::string>& metadata) {
  const FrequencyGrid& g = tpa.grid();
  nlohmann::json header = {
      {"format", "bsv-tpa"},
      {"layout", "row-major, row = signal, column = idler, frequencies ascending"},
      {"points", g.size()},
      {"center_rad_per_fs", g.center()},
      {"half_span_rad_per_fs", g.half_span()},
      {"step_rad_per_fs", g.step()},
      {"omega_min_rad_per_fs", g.omega(0)},
      {"value_units", "fs (unit L2 norm: sum |F|^2 dw^2 = 1)"},
      {"normalization", tpa.normalization() == TpaNormalization::UnitL2 ? "unit_l2" : "raw"},
      {"metadata", metadata},
  };
  const std::string text = header.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write TPA dump " + path.string());
  out.write(kMagic, sizeof kMagic);
  const std::uint64_t len = text.size();
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  const std::size_t n = g.size();
  std::vector<double> row(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = tpa(j, k);
      row[2 * k] = v.real();
      row[2 * k + 1] = v.imag();
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(double)));
  }
  if (!out) throw Error("short write on TPA dump " + path.string());
}

JointSpectralAmplitude read_tpa(const std::filesystem::path& path, std::map<std::string, std::string>* metadata) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open TPA dump " + path.string());
  char magic[8];
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + 8, kMagic)) throw Error(path.string() + " is not a TPA dump");
  std::uint64_t len = 0;
  in.read(reinterpret_cast<char*>(&len), sizeof len);
  std::string text(len, '\0');
  in.read(text.data(), static_cast<std::streamsize>(len));
  const auto header = nlohmann::json::parse(text);
  const std::size_t n = header.at("points").get<std::size_t>();
  const FrequencyGrid g = FrequencyGrid::symmetric(header.at("center_rad_per_fs").get<double>(), n,
                                                   header.at("half_span_rad_per_fs").get<double>());
  ComplexMatrix values(n, n);
  std::vector<double> row(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size() * sizeof(double)));
    if (!in) throw Error("truncated TPA dump " + path.string());
    for (std::size_t k = 0; k < n; ++k) values(j, k) = {row[2 * k], row[2 * k + 1]};
  }
  if (metadata) *metadata = header.at("metadata").get<std::map<std::string, std::string>>();
  const auto norm =
      header.at("normalization").get<std::string>() == "unit_l2" ? TpaNormalization::UnitL2 : TpaNormalization::Raw;
  return JointSpectralAmplitude(g, std::move(values), norm);
}

}  // namespace bsv
