#pragma once

#include <filesystem>
#include <string>

#include "bsv/dispersion.hpp"
#include "bsv/jsa.hpp"

namespace bsv::test {

inline const MaterialTable& materials() { return MaterialTable::bundled(); }

inline PhaseMatchedCrystal bbo_400() {
  return phase_match_type1(materials().at("BBO_o"), materials().at("BBO_e"), Wavelength::from_nm(400));
}

inline PumpConfig pump_1ps() { return PumpConfig::from_intensity_fwhm(Wavelength::from_nm(400), 1000.0); }

inline FrequencyGrid grid_for(const PumpConfig& p, std::size_t n, double half_span) {
  return FrequencyGrid::symmetric(0.5 * p.omega(), n, half_span);
}

inline InterferometerMedia sf6_media() { return {Material::vacuum(), materials().at("SF6")}; }

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("bsv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace bsv::test
