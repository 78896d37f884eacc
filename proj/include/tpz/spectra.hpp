#pragma once

#include <vector>

#include "tpz/types.hpp"

namespace tpz {

// Eigenvalues of a dense complex matrix (LAPACK zgeev, no eigenvectors).
std::vector<Complex> eigenvalues(const CMatrix& a);

}  // namespace tpz
