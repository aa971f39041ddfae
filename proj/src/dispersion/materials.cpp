#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bsv/dispersion.hpp"
#include "bsv/errors.hpp"

namespace bsv {
namespace {

using nlohmann::json;

double parse_decimal(const std::string& text, const std::string& where) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) throw Error("material table: cannot parse '" + text + "' in " + where);
  return value;
}

std::string decimal_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw Error("material table: expected a decimal string in " + where);
}

FormulaVariant parse_variant(const std::string& name) {
  if (name == "constant") return FormulaVariant::Constant;
  if (name == "schott") return FormulaVariant::Schott;
  if (name == "eimerl") return FormulaVariant::Eimerl;
  if (name == "peck_reeder") return FormulaVariant::PeckReeder;
  throw Error("material table: unknown formula_variant '" + name + "'");
}

std::size_t coefficient_count(FormulaVariant v) {
  switch (v) {
    case FormulaVariant::Constant: return 1;
    case FormulaVariant::Schott: return 6;
    case FormulaVariant::Eimerl: return 4;
    case FormulaVariant::PeckReeder: return 5;
  }
  return 0;
}

}  // namespace

std::string_view variant_name(FormulaVariant v) {
  switch (v) {
    case FormulaVariant::Constant: return "constant";
    case FormulaVariant::Schott: return "schott";
    case FormulaVariant::Eimerl: return "eimerl";
    case FormulaVariant::PeckReeder: return "peck_reeder";
  }
  return "unknown";
}

Material Material::vacuum() {
  return Material{"vacuum", FormulaVariant::Constant, {1.0}, {"1"}, {0.01, 1000.0}, "definition"};
}

MaterialTable MaterialTable::parse(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("material table: ") + e.what());
  }
  MaterialTable table;
  table.version_ = doc.value("version", std::string("unversioned"));
  if (!doc.contains("materials") || !doc["materials"].is_array())
    throw Error("material table: missing 'materials' array");

  for (const json& entry : doc["materials"]) {
    Material m;
    m.name = entry.at("name").get<std::string>();
    const std::string where = "material '" + m.name + "'";
    m.variant = parse_variant(entry.at("formula_variant").get<std::string>());
    for (const json& c : entry.at("coefficients")) {
      m.coefficient_text.push_back(decimal_text(c, where));
      m.coefficients.push_back(parse_decimal(m.coefficient_text.back(), where));
    }
    if (m.coefficients.size() != coefficient_count(m.variant))
      throw Error("material table: " + where + " has " + std::to_string(m.coefficients.size()) +
                  " coefficients, variant '" + std::string(variant_name(m.variant)) + "' needs " +
                  std::to_string(coefficient_count(m.variant)));
    const json& range = entry.at("valid_range_um");
    if (!range.is_array() || range.size() != 2) throw Error("material table: " + where + " needs valid_range_um[2]");
    m.valid_range = {parse_decimal(decimal_text(range[0], where), where),
                     parse_decimal(decimal_text(range[1], where), where)};
    if (!(m.valid_range.lo_um > 0.0 && m.valid_range.lo_um < m.valid_range.hi_um))
      throw Error("material table: " + where + " has an empty or non-positive valid range");
    m.source = entry.value("source", std::string());
    if (table.materials_.count(m.name)) throw Error("material table: duplicate " + where);
    table.materials_.emplace(m.name, std::move(m));
  }
  return table;
}

MaterialTable MaterialTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("material table: cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const MaterialTable& MaterialTable::bundled() {
  static const MaterialTable table = [] {
    const char* env = std::getenv("BSV_MATERIALS");
    return load(env && *env ? env : BSV_DEFAULT_MATERIALS);
  }();
  return table;
}

const Material& MaterialTable::at(std::string_view name) const {
  auto it = materials_.find(name);
  if (it == materials_.end()) throw Error("unknown material '" + std::string(name) + "'");
  return it->second;
}

bool MaterialTable::contains(std::string_view name) const { return materials_.find(name) != materials_.end(); }

std::vector<std::string> MaterialTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, m] : materials_) out.push_back(name);
  return out;
}

}  // namespace bsv
