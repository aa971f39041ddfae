#include <algorithm>
#include <cmath>

#include "bsv/errors.hpp"
#include "bsv/observables.hpp"

namespace bsv {
namespace {

struct Cluster {
  std::size_t first;
  std::size_t last;
};

double crossing(const Spectrum& s, std::size_t below, std::size_t above, double level) {
  const double v0 = s.values[below];
  const double v1 = s.values[above];
  const double t = (level - v0) / (v1 - v0);
  return s.grid.omega(below) + t * (s.grid.omega(above) - s.grid.omega(below));
}

Peak measure(const Spectrum& s, const Cluster& c) {
  Peak p;
  p.first = c.first;
  p.last = c.last;
  p.index = c.first;
  for (std::size_t j = c.first; j <= c.last; ++j)
    if (s.values[j] > s.values[p.index]) p.index = j;
  p.height = s.values[p.index];
  p.omega = s.grid.omega(p.index);
  p.wavelength_nm = s.grid.wavelength_nm(p.index);
  const double half = 0.5 * p.height;

  std::size_t lo = c.first;
  while (s.values[lo] < half) ++lo;
  std::size_t hi = c.last;
  while (s.values[hi] < half) --hi;
  if (lo == 0 || hi + 1 >= s.values.size())
    throw EdgeError("half-maximum crossing of the peak at " + std::to_string(p.wavelength_nm) +
                    " nm lies outside the grid");
  p.lower_half = crossing(s, lo - 1, lo, half);
  p.upper_half = crossing(s, hi + 1, hi, half);
  p.fwhm_rad_per_fs = p.upper_half - p.lower_half;
  p.fwhm_nm = std::abs(wavelength_nm_from_omega(p.lower_half) - wavelength_nm_from_omega(p.upper_half));
  return p;
}

}  // namespace

PeakAnalysis find_peaks(const Spectrum& s, const PeakPolicy& policy) {
  PeakAnalysis out;
  if (s.values.empty()) return out;
  const double top = *std::max_element(s.values.begin(), s.values.end());
  if (!(top > 0.0)) return out;
  const double level = policy.threshold * top;

  std::vector<Cluster> clusters;
  for (std::size_t j = 0; j < s.values.size(); ++j) {
    if (s.values[j] < level) continue;
    // contiguous points always join; across a dip, join when the gap is small
    if (!clusters.empty() && (j == clusters.back().last + 1 ||
                              s.grid.omega(j) - s.grid.omega(clusters.back().last) <= policy.merge_gap + 1e-15))
      clusters.back().last = j;
    else
      clusters.push_back({j, j});
  }
  for (const Cluster& c : clusters) out.peaks.push_back(measure(s, c));

  if (out.peaks.size() >= 2) {
    std::vector<std::size_t> order(out.peaks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return out.peaks[a].height > out.peaks[b].height; });
    const Peak& a = out.peaks[std::min(order[0], order[1])];
    const Peak& b = out.peaks[std::max(order[0], order[1])];
    out.separation_rad_per_fs = b.omega - a.omega;
    out.separation_nm = std::abs(a.wavelength_nm - b.wavelength_nm);
    std::size_t split = a.last;
    for (std::size_t j = a.last; j <= b.first; ++j)
      if (s.values[j] < s.values[split]) split = j;
    out.split_index = split;
  }
  return out;
}

Peak fwhm(const Spectrum& s, const PeakPolicy& policy) {
  const PeakAnalysis a = find_peaks(s, policy);
  if (a.peaks.empty()) throw EdgeError("spectrum has no peak");
  return *std::max_element(a.peaks.begin(), a.peaks.end(),
                           [](const Peak& x, const Peak& y) { return x.height < y.height; });
}

}  // namespace bsv
