#include "tpz/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tpz {

LaurentSymbol::LaurentSymbol(int r, int s, std::vector<Complex> coeffs)
    : r_(r), s_(s), coeffs_(std::move(coeffs)) {
  if (r < 0 || s < 1) throw DomainError("symbol requires r >= 0 and s >= 1");
  if (coeffs_.size() != static_cast<std::size_t>(r + s + 1))
    throw DomainError("symbol coefficient array must have length r+s+1");
  if (coeffs_.back() == Complex{}) throw DomainError("leading coefficient a_s must be nonzero");
  if (r > 0 && coeffs_.front() == Complex{}) throw DomainError("a_{-r} must be nonzero when r > 0");
}

Complex LaurentSymbol::coeff(int k) const {
  if (k < -r_ || k > s_) return {};
  return coeffs_[static_cast<std::size_t>(k + r_)];
}

double LaurentSymbol::scale() const {
  return std::accumulate(coeffs_.begin(), coeffs_.end(), 0.0,
                         [](double acc, Complex c) { return acc + std::abs(c); });
}

LaurentSymbol LaurentSymbol::shifted(Complex z) const {
  auto c = coeffs_;
  c[static_cast<std::size_t>(r_)] -= z;
  return {r_, s_, std::move(c)};
}

nlohmann::json LaurentSymbol::to_json() const {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& a : coeffs_) c.push_back({a.real(), a.imag()});
  return {{"r", r_}, {"s", s_}, {"coeffs", c}};
}

LaurentSymbol LaurentSymbol::from_json(const nlohmann::json& j) {
  std::vector<Complex> c;
  for (const auto& e : j.at("coeffs")) {
    if (e.is_number()) {
      c.emplace_back(e.get<double>(), 0.0);
    } else {
      c.emplace_back(e.at(0).get<double>(), e.size() > 1 ? e.at(1).get<double>() : 0.0);
    }
  }
  return {j.at("r").get<int>(), j.at("s").get<int>(), std::move(c)};
}

int RootProfile::inside() const {
  return static_cast<int>(std::count_if(roots.begin(), roots.end(),
                                        [](Complex l) { return std::abs(l) < 1.0; }));
}

Complex eval_symbol(const LaurentSymbol& sym, Complex w) {
  if (w == Complex{}) throw DomainError("symbol evaluated at 0");
  Complex acc{};
  for (int k = sym.s(); k >= -sym.r(); --k) acc = acc * w + sym.coeff(k);
  return acc * std::pow(w, -sym.r());
}

std::vector<Complex> q_polynomial(const LaurentSymbol& sym, Complex z) {
  std::vector<Complex> q(sym.coeffs().begin(), sym.coeffs().end());
  q[static_cast<std::size_t>(sym.r())] -= z;
  return q;
}

Complex poly_eval(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex poly_derivative_eval(std::span<const Complex> coeffs, Complex x) {
  Complex acc{};
  for (std::size_t k = coeffs.size(); k-- > 1;) acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

void sort_by_modulus(std::vector<Complex>& roots) {
  auto arg0 = [](Complex l) {
    double t = std::arg(l);
    return t < 0.0 ? t + 2.0 * kPi : t;
  };
  std::sort(roots.begin(), roots.end(), [&](Complex a, Complex b) {
    const double ma = std::abs(a);
    const double mb = std::abs(b);
    if (std::abs(ma - mb) > 1e-12) return ma < mb;
    return arg0(a) < arg0(b);
  });
}

std::vector<Complex> poly_roots(std::span<const Complex> coeffs) {
  std::size_t deg = coeffs.size() - 1;
  while (deg > 0 && coeffs[deg] == Complex{}) --deg;
  if (deg == 0) return {};
  CMatrix companion = CMatrix::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
  for (std::size_t i = 1; i < deg; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < deg; ++i)
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) = -coeffs[i] / coeffs[deg];
  Eigen::ComplexEigenSolver<CMatrix> es(companion, false);
  std::vector<Complex> roots(deg);
  for (std::size_t i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(static_cast<Eigen::Index>(i));
  sort_by_modulus(roots);
  return roots;
}

RootProfile symbol_roots(const LaurentSymbol& sym, Complex z) {
  RootProfile p;
  p.z = z;
  p.roots = poly_roots(q_polynomial(sym, z));
  p.unit_gap = std::numeric_limits<double>::infinity();
  for (const auto& l : p.roots) p.unit_gap = std::min(p.unit_gap, std::abs(std::abs(l) - 1.0));
  return p;
}

int winding(const LaurentSymbol& sym, Complex z, double tol) {
  const auto p = symbol_roots(sym, z);
  if (p.unit_gap < tol) throw OnCriticalCurve("point too close to the symbol curve for a winding count");
  return p.inside() - sym.r();
}

std::vector<Complex> curve_points(const LaurentSymbol& sym, int n_points) {
  if (n_points < 1) throw DomainError("curve_points needs a positive sample count");
  std::vector<Complex> pts(static_cast<std::size_t>(n_points));
  for (int k = 0; k < n_points; ++k) pts[static_cast<std::size_t>(k)] = eval_symbol(sym, unit_root(k, n_points));
  return pts;
}

double curve_distance(const LaurentSymbol& sym, Complex z) {
  constexpr int kSamples = 1024;
  auto dist = [&](double t) { return std::abs(eval_symbol(sym, std::polar(1.0, t)) - z); };
  std::vector<std::pair<double, int>> d(kSamples);
  for (int k = 0; k < kSamples; ++k) d[static_cast<std::size_t>(k)] = {dist(2.0 * kPi * k / kSamples), k};
  std::partial_sort(d.begin(), d.begin() + 4, d.end());
  double best = d.front().first;
  const double h = 2.0 * kPi / kSamples;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int c = 0; c < 4; ++c) {
    double lo = 2.0 * kPi * d[static_cast<std::size_t>(c)].second / kSamples - h;
    double hi = lo + 2.0 * h;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = dist(x1), f2 = dist(x2);
    for (int it = 0; it < 60; ++it) {
      if (f1 < f2) {
        hi = x2; x2 = x1; f2 = f1; x1 = hi - g * (hi - lo); f1 = dist(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2; x2 = lo + g * (hi - lo); f2 = dist(x2);
      }
    }
    best = std::min({best, f1, f2});
  }
  return best;
}

bool roots_simple(const RootProfile& profile, double threshold) {
  for (std::size_t i = 0; i < profile.roots.size(); ++i)
    for (std::size_t j = i + 1; j < profile.roots.size(); ++j)
      if (std::abs(profile.roots[i] - profile.roots[j]) <= threshold) return false;
  return true;
}

namespace symbols {

LaurentSymbol shift() { return {0, 1, {0.0, 1.0}}; }
LaurentSymbol shift_squared() { return {0, 2, {0.0, 0.0, 1.0}}; }
LaurentSymbol tridiagonal() { return {1, 1, {1.0, 0.0, 1.0}}; }
LaurentSymbol mixed() { return {1, 2, {1.0, 0.0, 1.0, 2.0}}; }
LaurentSymbol figure_two() { return {3, 2, {-0.5 * kI, kI, 0.0, 0.0, 2.0, 1.0}}; }
LaurentSymbol figure_three_c() {
  return {3, 3, {-0.75, -kI, 0.75, 0.0, -0.75, 1.25 * kI, 0.75}};
}
LaurentSymbol szego_example() { return {1, 1, {-0.5, 1.25, -0.5}}; }

std::vector<std::pair<std::string, LaurentSymbol>> bundled() {
  return {{"lambda", shift()},
          {"lambda^2", shift_squared()},
          {"lambda+2lambda^2+lambda^-1", mixed()},
          {"figure2", figure_two()},
          {"figure3c", figure_three_c()}};
}

}  // namespace symbols

}  // namespace tpz
