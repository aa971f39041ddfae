#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "bsv/jsa.hpp"

namespace bsv::oracle {

// F = exp(-(x + y - 2c)^2 / (4 s^2) - (x - y)^2 / (4 d^2)). Mehler's formula
// gives lambda_n = (1 - mu) mu^n with mu = ((s - d) / (s + d))^2.
inline JointSpectralAmplitude double_gaussian(const FrequencyGrid& g, double s, double d) {
  const double c = g.center();
  return JointSpectralAmplitude::from_function(g, [&](double x, double y) {
    const double p = x + y - 2.0 * c;
    const double m = x - y;
    return std::complex<double>(std::exp(-p * p / (4.0 * s * s) - m * m / (4.0 * d * d)));
  });
}

inline std::vector<double> mehler_lambdas(double s, double d, std::size_t count) {
  const double mu = std::pow((s - d) / (s + d), 2);
  std::vector<double> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = (1.0 - mu) * std::pow(mu, static_cast<double>(n));
  return out;
}

}  // namespace bsv::oracle
