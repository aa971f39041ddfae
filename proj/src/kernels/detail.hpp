#pragma once

#include <cmath>

namespace bsv::kernels::detail {

// sin(x)/x given sin(x); series below 1e-4 where the quotient loses digits.
inline double sinc_from(double x, double sin_x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return sin_x / x;
}

}  // namespace bsv::kernels::detail
