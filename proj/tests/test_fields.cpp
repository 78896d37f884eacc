#include <gtest/gtest.h>

#include <random>

#include "tpz/fields.hpp"
#include "tpz/limits.hpp"
#include "tpz/matgen.hpp"
#include "tpz/multilinear.hpp"

using namespace tpz;

namespace {

// Q (z - C)^{-1} U X U^* (z - C)^{-1} P from dense solves.
CMatrix dense_w1(const LaurentSymbol& sym, const NoiseModel& noise, int n, std::uint64_t seed, Complex z) {
  const auto pq = pq_factors(sym, n);
  const CMatrix x = sample_x(noise.dist(), n, seed);
  const CMatrix u = noise.basis_matrix(n);
  const CMatrix resolvent = (z * CMatrix::Identity(n, n) - circulant_matrix(sym, n)).inverse();
  return pq.Q * resolvent * u * x * u.adjoint() * resolvent * pq.P;
}

NoiseModel noise(Basis basis, Distribution dist = Distribution::complex_gaussian, double sigma = 0.6) {
  return {dist, basis, ConstantSigma{sigma}};
}

}  // namespace

TEST(LinearFieldFinite, MatchesDenseOracle) {
  const std::vector<Complex> pts{{0.3, 0.1}, {2.0, -1.0}, {-0.7, 0.6}};
  for (const auto& sym : {symbols::shift(), symbols::mixed(), symbols::figure_two()})
    for (auto basis : {Basis::identity, Basis::fourier}) {
      const int n = 24;
      const auto sample = sample_w1_finite(sym, noise(basis), n, pts, 11);
      EXPECT_EQ(sample.provenance, Provenance::finite_n);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const CMatrix oracle = dense_w1(sym, noise(basis), n, 11, pts[i]);
        EXPECT_LE((sample.values[i] - oracle).norm(), 1e-9 * (1.0 + oracle.norm())) << pts[i];
      }
    }
}

TEST(LinearFieldFinite, Errors) {
  EXPECT_THROW(LinearFieldFinite(symbols::mixed(), noise(Basis::identity), 3, 1), SizeError);
  const LinearFieldFinite f(symbols::shift(), noise(Basis::identity), 8, 1);
  EXPECT_THROW(f(1.0), SingularError);
}

TEST(ResolventCoefficients, ShiftOutsideExample) {
  // 1/(2 - w) = sum_j w^j / 2^{j+1}; coefficient of w^l pairs with lag -l.
  const ResolventCoefficients gamma(symbols::shift(), 2.0);
  for (int l = 0; l < 10; ++l) EXPECT_NEAR(std::abs(gamma(-l) - std::pow(2.0, -l - 1)), 0.0, 1e-15);
  for (int l = 1; l < 10; ++l) EXPECT_NEAR(std::abs(gamma(l)), 0.0, 1e-15);
}

TEST(LinearFieldLimit, VarianceMatchesKernel) {
  const auto sym = symbols::shift();
  const Complex z = 0.3;
  const std::vector<Complex> pts{z};
  const long long L = lattice_half_width(sym, pts, 1e-8);
  const int draws = 3000;
  double second = 0.0;
  for (int s = 0; s < draws; ++s) {
    const LinearFieldLimit f(sym, Distribution::complex_gaussian, L, static_cast<std::uint64_t>(s));
    second += std::norm(f(z)(0, 0));
  }
  second /= draws;
  // E|W|^2 = A(z,z) B(z,z) with unit-variance lattice entries.
  const KernelSet ks{sym, 0.0};
  const double expected = (kernel_eval(ks, KernelKind::A, z, z)(0, 0) * kernel_eval(ks, KernelKind::B, z, z)(0, 0)).real();
  EXPECT_NEAR(expected, 1.0 / (0.91 * 0.91), 1e-12);
  EXPECT_NEAR(second, expected, 5.0 * expected / std::sqrt(draws));
}

TEST(LinearFieldLimit, TailBoundShrinks) {
  const LinearFieldLimit small(symbols::mixed(), Distribution::rademacher, 8, 1);
  const LinearFieldLimit large(symbols::mixed(), Distribution::rademacher, 64, 1);
  EXPECT_GT(small.tail_bound(Complex(0.1, 0.3)), large.tail_bound(Complex(0.1, 0.3)));
  EXPECT_THROW(LinearFieldLimit(symbols::shift(), Distribution::rademacher, 0, 1), DomainError);
}

TEST(GaussianPart, ZeroSigmaIsZero) {
  const std::vector<Complex> pts{{0.2, 0.1}, {0.3, -0.2}};
  const auto w = sample_w2(symbols::shift(), noise(Basis::identity), 0.0, pts, 5);
  for (const auto& v : w.values) EXPECT_EQ(v.norm(), 0.0);
}

TEST(GaussianPart, MonteCarloVariance) {
  const auto sym = symbols::shift();
  const double sigma = 0.6;
  const Complex z = 0.3;
  const std::vector<Complex> pts{z};
  const int draws = 4000;
  double second = 0.0;
  Complex pseudo{};
  for (int s = 0; s < draws; ++s) {
    const Complex w = sample_w2(sym, noise(Basis::identity), sigma, pts, static_cast<std::uint64_t>(s)).values[0](0, 0);
    second += std::norm(w);
    pseudo += w * w;
  }
  second /= draws;
  pseudo /= static_cast<double>(draws);
  // A B sigma^2 theta / (1 - sigma^2 theta) with A = B = theta = 1 / (1 - |z|^2).
  const double theta = 1.0 / 0.91, s2 = sigma * sigma;
  const double expected = theta * theta * s2 * theta / (1.0 - s2 * theta);
  EXPECT_NEAR(second, expected, 5.0 * expected / std::sqrt(draws));
  EXPECT_LE(std::abs(pseudo), 5.0 * expected / std::sqrt(draws));
}

TEST(Phi, EqualsFieldForBandOne) {
  const PhiSampler sampler(symbols::shift(), noise(Basis::identity), 0.0, 0.3, PhiSource{PhiSource::Kind::limit, 0},
                           PhiOptions{0.0, 4, 16});
  EXPECT_EQ(sampler.delta(), 1);
  CMatrix w(1, 1);
  w(0, 0) = Complex(0.7, -0.2);
  EXPECT_NEAR(std::abs(sampler.weight(0.1, w) - w(0, 0)), 0.0, 1e-15);
  auto real = sampler.draw(3);
  const Complex z{0.05, 0.1};
  EXPECT_NEAR(std::abs(real(z) - real.field(z)(0, 0)), 0.0, 1e-12);
}

TEST(Phi, WeightIsAdjugateTrace) {
  const auto sym = symbols::shift_squared();
  const PhiSampler sampler(sym, noise(Basis::identity, Distribution::complex_gaussian, 0.3), 0.0, 0.2,
                           PhiSource{PhiSource::Kind::limit, 0}, PhiOptions{0.0, 3, 12});
  EXPECT_EQ(sampler.delta(), 2);
  // H = -I inside for lambda^2, so adj_2(I + H) = 1 and phi = det W.
  CMatrix w(2, 2);
  w << Complex(1.0, 0.5), Complex(-0.3, 0.0), Complex(0.2, 0.1), Complex(0.4, -1.0);
  EXPECT_NEAR(std::abs(sampler.weight(0.1, w) - w.determinant()), 0.0, 1e-12);
}

TEST(Phi, RegionErrors) {
  EXPECT_THROW(PhiSampler(symbols::shift(), noise(Basis::identity), 0.0, 0.95, PhiSource{}), RegionError);
  EXPECT_THROW(PhiSampler(symbols::shift(), noise(Basis::identity), 2.0, 0.2, PhiSource{}), RegionError);
}

TEST(ZStatistic, MatchesDenseProduct) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  const int n = 6;
  auto rnd = [&](int rows, int cols) {
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = {g(gen), g(gen)};
    return a;
  };
  const CMatrix u = rnd(n, 1), v = rnd(n, 1), x = rnd(n, n);
  std::vector<CMatrix> B{u * v.adjoint(), rnd(n, n), rnd(n, n)};
  for (int k = 1; k <= 3; ++k) {
    CMatrix prod = x;
    for (int t = 1; t < k; ++t) prod = (prod * B[static_cast<std::size_t>(t)] * x).eval();
    const Complex oracle = (prod * B[0]).trace() * std::pow(n, -0.5 * (k - 1));
    EXPECT_NEAR(std::abs(z_statistic(B, x, k) - oracle), 0.0, 1e-10 * (1.0 + std::abs(oracle))) << k;
  }
  std::vector<CMatrix> full{rnd(n, n)};
  EXPECT_THROW(z_statistic(full, x, 1), DomainError);
  EXPECT_THROW(z_statistic(B, x, 4), DomainError);
}

TEST(SigmaK, Examples) {
  const int n = 4;
  const std::vector<CMatrix> id(3, CMatrix::Identity(n, n));
  auto s = sigma_k(id, id, 2, n, 1.0);
  EXPECT_NEAR(std::abs(s.sigma - 4.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.sigma_prime - 4.0), 0.0, 1e-14);
  s = sigma_k(id, id, 3, n, 0.0);
  EXPECT_NEAR(std::abs(s.sigma - 4.0), 0.0, 1e-14);
  EXPECT_EQ(s.sigma_prime, Complex{});
  std::vector<CMatrix> imag(2, Complex(0.0, 1.0) * CMatrix::Identity(n, n));
  s = sigma_k(imag, imag, 2, n, 1.0);
  EXPECT_NEAR(std::abs(s.sigma - 4.0), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.sigma_prime - 4.0), 0.0, 1e-14);
}

TEST(SigmaK, SecondMomentOfZ) {
  const int n = 5, draws = 4000;
  CMatrix u = CMatrix::Zero(n, 1), v = CMatrix::Zero(n, 1);
  u(0) = 1.0;
  v(1) = Complex(0.6, 0.8);
  std::vector<CMatrix> B{u * v.adjoint(), CMatrix::Identity(n, n)};
  double second = 0.0;
  for (int s = 0; s < draws; ++s) second += std::norm(z_statistic(B, sample_x(Distribution::complex_gaussian, n, static_cast<std::uint64_t>(s)), 2));
  second /= draws;
  const double expected = sigma_k(B, B, 2, n, 0.0).sigma.real();
  EXPECT_NEAR(expected, 1.0, 1e-14);
  EXPECT_NEAR(second, expected, 6.0 * expected / std::sqrt(draws));
}

TEST(GaussianWk, MomentsMatch) {
  const int n = 4, draws = 20000;
  CMatrix b0 = CMatrix::Zero(n, n);
  b0(0, 1) = 1.0;
  const std::vector<CMatrix> B{b0, CMatrix::Identity(n, n) * Complex(0.0, 1.0)};
  const auto target = sigma_k(B, B, 2, n, 1.0);
  double second = 0.0;
  Complex pseudo{};
  for (int i = 0; i < draws; ++i) {
    const Complex w = gaussian_w_k(B, 2, 9, 1.0, static_cast<std::uint64_t>(i));
    second += std::norm(w);
    pseudo += w * w;
  }
  second /= draws;
  pseudo /= static_cast<double>(draws);
  const double tol = 6.0 * target.sigma.real() * std::sqrt(2.0 / draws);
  EXPECT_NEAR(second, target.sigma.real(), tol);
  EXPECT_NEAR(std::abs(pseudo - target.sigma_prime), 0.0, tol);
}

TEST(Grid, PointsRowMajor) {
  const GridSpec grid{Window{0.0, 1.0, 0.0, 2.0}, 3, 2};
  const auto pts = grid.points();
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[1].imag(), pts[0].imag());
  EXPECT_GT(pts[3].imag(), pts[0].imag());
  EXPECT_THROW((GridSpec{Window{}, 0, 2}.points()), DomainError);
}

TEST(Grid, PolarGridInsideDisk) {
  const auto pts = polar_grid(Complex(0.1, 0.2), 0.5, 4, 32);
  for (const auto& p : pts) EXPECT_LE(std::abs(p - Complex(0.1, 0.2)), 0.5 + 1e-12);
}

TEST(LinearField, FiniteAndLimitSecondMomentsAgree) {
  const auto sym = symbols::shift();
  const Complex z = 0.3;
  const std::vector<Complex> pts{z};
  const long long L = lattice_half_width(sym, pts, 1e-8);
  const int draws = 1500;
  std::vector<double> finite, limit;
  for (int s = 0; s < draws; ++s) {
    finite.push_back(std::norm(LinearFieldFinite(sym, noise(Basis::identity), 400, static_cast<std::uint64_t>(s))(z)(0, 0)));
    limit.push_back(std::norm(LinearFieldLimit(sym, Distribution::complex_gaussian, L, static_cast<std::uint64_t>(s + draws))(z)(0, 0)));
  }
  auto mean_se = [](const std::vector<double>& v) {
    double m = 0.0, q = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    for (double x : v) q += (x - m) * (x - m);
    return std::pair{m, std::sqrt(q / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()))};
  };
  const auto [mf, sf] = mean_se(finite);
  const auto [ml, sl] = mean_se(limit);
  EXPECT_NEAR(mf, ml, 5.0 * std::hypot(sf, sl));
}
