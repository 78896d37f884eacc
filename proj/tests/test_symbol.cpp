#include <gtest/gtest.h>

#include <random>

#include "tpz/symbol.hpp"

using namespace tpz;

namespace {

constexpr double kTol = 1e-12;

LaurentSymbol random_symbol(std::mt19937_64& gen, int max_r, int max_s) {
  std::uniform_int_distribution<int> rd(0, max_r), sd(1, max_s);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int r = rd(gen), s = sd(gen);
  std::vector<Complex> c(static_cast<std::size_t>(r + s + 1));
  for (auto& x : c) x = std::sqrt(u(gen)) * std::polar(1.0, 2.0 * kPi * u(gen));
  // Extreme coefficients bounded away from zero.
  c.front() = std::polar(0.3 + 0.7 * u(gen), 2.0 * kPi * u(gen));
  c.back() = std::polar(0.3 + 0.7 * u(gen), 2.0 * kPi * u(gen));
  return {r, s, std::move(c)};
}

// Accumulated argument of a(e^{i theta}) - z over uniform samples.
int winding_oracle(const LaurentSymbol& sym, Complex z, int samples = 4096) {
  double total = 0.0;
  Complex prev = eval_symbol(sym, 1.0) - z;
  for (int k = 1; k <= samples; ++k) {
    const Complex cur = eval_symbol(sym, std::polar(1.0, 2.0 * kPi * k / samples)) - z;
    total += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

}  // namespace

TEST(EvalSymbol, Examples) {
  EXPECT_NEAR(std::abs(eval_symbol(symbols::shift(), 1.0) - 1.0), 0.0, kTol);
  EXPECT_NEAR(std::abs(eval_symbol(symbols::figure_two(), 1.0) - Complex{3.0, 0.5}), 0.0, kTol);
  EXPECT_NEAR(std::abs(eval_symbol(symbols::tridiagonal(), kI)), 0.0, kTol);
}

TEST(EvalSymbol, ZeroArgumentThrows) { EXPECT_THROW(eval_symbol(symbols::tridiagonal(), 0.0), DomainError); }

TEST(LaurentSymbol, RejectsBadInvariants) {
  EXPECT_THROW(LaurentSymbol(0, 1, {1.0, 0.0}), DomainError);
  EXPECT_THROW(LaurentSymbol(1, 1, {0.0, 0.0, 1.0}), DomainError);
  EXPECT_THROW(LaurentSymbol(1, 1, {1.0, 1.0}), DomainError);
}

TEST(LaurentSymbol, JsonRoundTrip) {
  const auto a = symbols::figure_three_c();
  const auto b = LaurentSymbol::from_json(a.to_json());
  ASSERT_EQ(a.r(), b.r());
  ASSERT_EQ(a.s(), b.s());
  for (int k = -a.r(); k <= a.s(); ++k) EXPECT_EQ(a.coeff(k), b.coeff(k));
}

TEST(SymbolRoots, Examples) {
  auto p = symbol_roots(symbols::shift(), 0.3);
  ASSERT_EQ(p.roots.size(), 1u);
  EXPECT_NEAR(std::abs(p.roots[0] - 0.3), 0.0, kTol);

  // Equal moduli ordered by argument in [0, 2 pi).
  p = symbol_roots(symbols::shift_squared(), 0.25);
  ASSERT_EQ(p.roots.size(), 2u);
  EXPECT_NEAR(std::abs(p.roots[0] - 0.5), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.roots[1] + 0.5), 0.0, 1e-12);

  p = symbol_roots(symbols::tridiagonal(), 0.0);
  ASSERT_EQ(p.roots.size(), 2u);
  EXPECT_NEAR(std::abs(p.roots[0] - kI), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(p.roots[1] + kI), 0.0, 1e-12);
  EXPECT_NEAR(p.unit_gap, 0.0, 1e-12);
}

TEST(SymbolRoots, ReconstructsPolynomial) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int t = 0; t < 50; ++t) {
    const auto sym = random_symbol(gen, 3, 3);
    const Complex z{u(gen), u(gen)};
    const auto prof = symbol_roots(sym, z);
    ASSERT_EQ(static_cast<int>(prof.roots.size()), sym.band());
    for (std::size_t k = 1; k < prof.roots.size(); ++k) EXPECT_LE(std::abs(prof.roots[k - 1]), std::abs(prof.roots[k]) + 1e-12);
    const auto q = q_polynomial(sym, z);
    for (int i = 0; i < 8; ++i) {
      const Complex x = std::polar(0.7 + 0.1 * i, 0.9 * i);
      Complex prod = sym.coeff(sym.s());
      for (const auto& l : prof.roots) prod *= x - l;
      const Complex ref = poly_eval(q, x);
      EXPECT_LE(std::abs(prod - ref), 1e-9 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST(Winding, Examples) {
  EXPECT_EQ(winding(symbols::shift(), 0.5), 1);
  EXPECT_EQ(winding(symbols::shift(), 2.0), 0);
  EXPECT_EQ(winding(symbols::shift_squared(), 0.1), 2);
  EXPECT_EQ(winding(symbols::tridiagonal(), 3.0), 0);
}

TEST(Winding, OnCurveThrows) { EXPECT_THROW(winding(symbols::shift(), Complex{1.0, 0.0}), OnCriticalCurve); }

TEST(Winding, MatchesArgumentOracle) {
  std::mt19937_64 gen(2024);
  int tested = 0;
  while (tested < 100) {
    const auto sym = random_symbol(gen, 3, 3);
    std::uniform_real_distribution<double> u(-sym.scale(), sym.scale());
    const Complex z{u(gen), u(gen)};
    if (symbol_roots(sym, z).unit_gap <= 0.05) continue;
    EXPECT_EQ(winding(sym, z), winding_oracle(sym, z));
    ++tested;
  }
}

TEST(Winding, ZeroFarAway) {
  for (const auto& [name, sym] : symbols::bundled()) {
    const double far = 1.01 * sym.scale() + 0.1;
    for (int k = 0; k < 8; ++k) EXPECT_EQ(winding(sym, std::polar(far, 0.7 * k)), 0) << name;
  }
}

TEST(CurvePoints, Examples) {
  const auto a = curve_points(symbols::shift(), 4);
  const Complex ea[] = {1.0, kI, -1.0, -kI};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(a[k] - ea[k]), 0.0, kTol);
  const auto b = curve_points(symbols::shift_squared(), 4);
  const Complex eb[] = {1.0, -1.0, 1.0, -1.0};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(b[k] - eb[k]), 0.0, kTol);
  const auto sym = symbols::figure_three_c();
  const auto c = curve_points(sym, 8);
  for (int k = 0; k < 8; ++k) EXPECT_NEAR(std::abs(c[k] - eval_symbol(sym, unit_root(k, 8))), 0.0, kTol);
}

TEST(RootsSimple, DetectsDoubleRoot) {
  // a(l) = l^2 - 4 l at z = -4 gives (l - 2)^2.
  const LaurentSymbol sym(0, 2, {0.0, -4.0, 1.0});
  EXPECT_FALSE(roots_simple(symbol_roots(sym, -4.0)));
  EXPECT_TRUE(roots_simple(symbol_roots(sym, 0.5)));
}
