#pragma once

#include <vector>

#include "tpz/types.hpp"

namespace tpz {

using Subset = std::vector<int>;  // 1-based, increasing

// k-subsets of {1..n} in lexicographic order.
std::vector<Subset> subsets(int n, int k);

struct IndexedMatrix {
  int k = 0;
  int n = 0;
  std::vector<Subset> index;  // row and column labels
  CMatrix values;
};

Complex determinant(const CMatrix& a);
// det A(I|J): rows I, columns J (1-based).
Complex minor(const CMatrix& a, const Subset& rows, const Subset& cols);

IndexedMatrix compound(const CMatrix& a, int k);
IndexedMatrix adjugate_k(const CMatrix& a, int k);
// sum_k Tr(adj_k(A) wedge^k(B)).
Complex det_sum(const CMatrix& a, const CMatrix& b);

}  // namespace tpz
