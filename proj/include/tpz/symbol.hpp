#pragma once

#include <json.hpp>
#include <span>
#include <vector>

#include "tpz/types.hpp"

namespace tpz {

// a(lambda) = sum_{k=-r}^{s} a_k lambda^k, with a_s != 0 and a_{-r} != 0 when r > 0.
class LaurentSymbol {
 public:
  LaurentSymbol(int r, int s, std::vector<Complex> coeffs);

  int r() const { return r_; }
  int s() const { return s_; }
  int band() const { return r_ + s_; }
  // Coefficient a_k; zero outside -r..s.
  Complex coeff(int k) const;
  std::span<const Complex> coeffs() const { return coeffs_; }
  // Sum of |a_k|; bounds |a| on the unit circle.
  double scale() const;
  LaurentSymbol shifted(Complex z) const;  // a - z

  nlohmann::json to_json() const;
  static LaurentSymbol from_json(const nlohmann::json& j);

 private:
  int r_;
  int s_;
  std::vector<Complex> coeffs_;  // index k + r
};

struct RootProfile {
  Complex z;
  std::vector<Complex> roots;  // roots of Q_z by nondecreasing modulus
  double unit_gap = 0.0;
  int inside() const;  // number of roots strictly inside the unit disk
};

Complex eval_symbol(const LaurentSymbol& sym, Complex w);
// Coefficients of Q_z(lambda) = lambda^r (a(lambda) - z), constant term first.
std::vector<Complex> q_polynomial(const LaurentSymbol& sym, Complex z);
Complex poly_eval(std::span<const Complex> coeffs, Complex x);
Complex poly_derivative_eval(std::span<const Complex> coeffs, Complex x);
// Roots of a polynomial (constant term first) from companion-matrix eigenvalues.
std::vector<Complex> poly_roots(std::span<const Complex> coeffs);
void sort_by_modulus(std::vector<Complex>& roots);

RootProfile symbol_roots(const LaurentSymbol& sym, Complex z);
int winding(const LaurentSymbol& sym, Complex z, double tol = 1e-8);
std::vector<Complex> curve_points(const LaurentSymbol& sym, int n_points);
// Minimal distance from z to the curve a(S^1).
double curve_distance(const LaurentSymbol& sym, Complex z);
bool roots_simple(const RootProfile& profile, double threshold = 1e-9);

namespace symbols {
LaurentSymbol shift();          // lambda
LaurentSymbol shift_squared();  // lambda^2
LaurentSymbol tridiagonal();    // lambda + lambda^{-1}
LaurentSymbol mixed();          // lambda + 2 lambda^2 + lambda^{-1}
LaurentSymbol figure_two();     // t^2 + 2t + i t^{-2} - 0.5 i t^{-3}
LaurentSymbol figure_three_c(); // -3/4 t + 5/4 i t^2 + 3/4 t^3 + 3/4 t^{-1} - i t^{-2} - 3/4 t^{-3}
LaurentSymbol szego_example();  // (1 - t/2)(1 - 1/(2t))
std::vector<std::pair<std::string, LaurentSymbol>> bundled();
}  // namespace symbols

}  // namespace tpz
