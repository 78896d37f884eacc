#include "tpz/spectra.hpp"

#include <lapacke.h>

#include <string>

namespace tpz {

std::vector<Complex> eigenvalues(const CMatrix& a) {
  if (a.rows() != a.cols()) throw SizeError("eigenvalues need a square matrix");
  const auto n = static_cast<lapack_int>(a.rows());
  if (n == 0) return {};
  CMatrix work = a;  // column-major, overwritten by zgeev
  std::vector<Complex> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, reinterpret_cast<lapack_complex_double*>(work.data()), n,
                    reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1, nullptr, 1);
  if (info != 0) throw Error("zgeev failed with info " + std::to_string(info));
  return w;
}

}  // namespace tpz
