#include <lapacke.h>

#include <algorithm>
#include <sstream>

#include "bsv/errors.hpp"
#include "bsv/schmidt.hpp"

namespace bsv {

SvdResult complex_svd(ComplexMatrix a, bool vectors) {
  const lapack_int m = static_cast<lapack_int>(a.rows());
  const lapack_int n = static_cast<lapack_int>(a.cols());
  const lapack_int k = std::min(m, n);
  if (!a.allFinite()) throw NumericalError("SVD input contains non-finite entries");
  const double frobenius = a.norm();

  SvdResult r;
  r.singular_values.resize(k);
  if (vectors) {
    r.u.resize(m, k);
    r.vh.resize(k, n);
  }
  auto* pa = reinterpret_cast<lapack_complex_double*>(a.data());
  auto* pu = vectors ? reinterpret_cast<lapack_complex_double*>(r.u.data()) : nullptr;
  auto* pv = vectors ? reinterpret_cast<lapack_complex_double*>(r.vh.data()) : nullptr;
  const lapack_int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, vectors ? 'S' : 'N', m, n, pa, m,
                                         r.singular_values.data(), pu, m, pv, k);
  if (info != 0) {
    std::ostringstream os;
    os << "complex SVD failed (zgesdd info " << info << ") on a " << m << "x" << n
       << " matrix with Frobenius norm " << frobenius;
    throw NumericalError(os.str());
  }
  return r;
}

}  // namespace bsv
