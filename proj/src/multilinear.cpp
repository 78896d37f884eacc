#include "tpz/multilinear.hpp"

#include <numeric>

namespace tpz {

std::vector<Subset> subsets(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  Subset cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), 1);
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Complex determinant(const CMatrix& a) {
  if (a.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<CMatrix>(a).determinant();
}

Complex minor(const CMatrix& a, const Subset& rows, const Subset& cols) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  if (k == 0) return 1.0;
  CMatrix sub(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      sub(i, j) = a(rows[static_cast<std::size_t>(i)] - 1, cols[static_cast<std::size_t>(j)] - 1);
  return determinant(sub);
}

namespace {

void check_order(const CMatrix& a, int k) {
  if (a.rows() != a.cols()) throw DomainError("square matrix required");
  if (k < 0 || k > a.rows()) throw DomainError("exterior power out of range");
}

Subset complement(const Subset& s, int n) {
  Subset c;
  std::size_t p = 0;
  for (int i = 1; i <= n; ++i) {
    if (p < s.size() && s[p] == i) ++p;
    else c.push_back(i);
  }
  return c;
}

}  // namespace

IndexedMatrix compound(const CMatrix& a, int k) {
  check_order(a, k);
  const int n = static_cast<int>(a.rows());
  IndexedMatrix out{k, n, subsets(n, k), {}};
  const auto d = static_cast<Eigen::Index>(out.index.size());
  out.values.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      out.values(i, j) = minor(a, out.index[static_cast<std::size_t>(i)], out.index[static_cast<std::size_t>(j)]);
  return out;
}

IndexedMatrix adjugate_k(const CMatrix& a, int k) {
  check_order(a, k);
  const int n = static_cast<int>(a.rows());
  IndexedMatrix out{k, n, subsets(n, k), {}};
  const auto d = static_cast<Eigen::Index>(out.index.size());
  out.values.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const auto& rows = out.index[static_cast<std::size_t>(i)];
    const int si = std::accumulate(rows.begin(), rows.end(), 0);
    const Subset rc = complement(rows, n);
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& cols = out.index[static_cast<std::size_t>(j)];
      const int sj = std::accumulate(cols.begin(), cols.end(), 0);
      const double sign = ((si + sj) % 2 == 0) ? 1.0 : -1.0;
      out.values(i, j) = sign * minor(a, complement(cols, n), rc);
    }
  }
  return out;
}

Complex det_sum(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DomainError("det_sum needs square matrices of equal size");
  Complex total{};
  for (int k = 0; k <= a.rows(); ++k) total += (adjugate_k(a, k).values * compound(b, k).values).trace();
  return total;
}

}  // namespace tpz
