#include <gtest/gtest.h>

#include <algorithm>

#include "tpz/matgen.hpp"
#include "tpz/multilinear.hpp"
#include "tpz/spectra.hpp"

using namespace tpz;

namespace {

void expect_matrix(const CMatrix& a, std::initializer_list<std::initializer_list<double>> rows, double tol = 0.0) {
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (double v : row) {
      EXPECT_LE(std::abs(a(i, j) - Complex{v}), tol) << "(" << i << "," << j << ")";
      ++j;
    }
    ++i;
  }
}

std::vector<Complex> sorted(std::vector<Complex> v) {
  std::sort(v.begin(), v.end(), [](Complex a, Complex b) {
    if (std::abs(a.real() - b.real()) > 1e-9) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return v;
}

}  // namespace

TEST(Toeplitz, Examples) {
  expect_matrix(toeplitz_matrix(symbols::shift(), 3), {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  expect_matrix(toeplitz_matrix(symbols::tridiagonal(), 3), {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  const CMatrix t = toeplitz_matrix(symbols::mixed(), 4);
  expect_matrix(t.topRows(1), {{0, 1, 2, 0}});
}

TEST(Toeplitz, SizeError) {
  EXPECT_THROW(toeplitz_matrix(symbols::tridiagonal(), 2), SizeError);
  EXPECT_THROW(circulant_matrix(symbols::tridiagonal(), 2), SizeError);
  EXPECT_THROW(pq_factors(symbols::tridiagonal(), 2), SizeError);
}

TEST(Circulant, Examples) {
  expect_matrix(circulant_matrix(symbols::shift(), 3), {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const CMatrix c = circulant_matrix(symbols::shift(), 4) - 2.0 * CMatrix::Identity(4, 4);
  EXPECT_NEAR(std::abs(determinant(c) - 15.0), 0.0, 1e-12);
}

TEST(Circulant, EigenvaluesOnCurve) {
  for (const auto& [name, sym] : symbols::bundled()) {
    const int n = 17;
    std::vector<Complex> expected;
    for (int l = 0; l < n; ++l) expected.push_back(eval_symbol(sym, unit_root(l, n)));
    const auto got = sorted(eigenvalues(circulant_matrix(sym, n)));
    expected = sorted(expected);
    for (int l = 0; l < n; ++l) EXPECT_NEAR(std::abs(got[l] - expected[l]), 0.0, 1e-10) << name;
  }
}

TEST(PQFactors, ShiftExample) {
  const auto pq = pq_factors(symbols::shift(), 4);
  ASSERT_EQ(pq.P.rows(), 4);
  ASSERT_EQ(pq.P.cols(), 1);
  expect_matrix(pq.P.transpose(), {{0, 0, 0, 1}});
  expect_matrix(pq.Q, {{1, 0, 0, 0}});
  const CMatrix t = circulant_matrix(symbols::shift(), 4) - pq.P * pq.Q;
  EXPECT_EQ(t(3, 0), Complex{});
}

TEST(PQFactors, ExhaustiveSweep) {
  for (int r = 0; r <= 3; ++r)
    for (int s = 1; s <= 3; ++s) {
      std::vector<Complex> c;
      for (int k = 0; k <= r + s; ++k) c.emplace_back(1.0 + 0.5 * k, 0.25 * k - 0.3);
      const LaurentSymbol sym(r, s, c);
      for (int n = r + s + 1; n <= 50; ++n) {
        const auto pq = pq_factors(sym, n);
        ASSERT_EQ(pq.P.cols(), r + s);
        ASSERT_EQ(pq.Q.rows(), r + s);
        const CMatrix diff = circulant_matrix(sym, n) - pq.P * pq.Q - toeplitz_matrix(sym, n);
        EXPECT_EQ(diff.cwiseAbs().maxCoeff(), 0.0) << "r=" << r << " s=" << s << " n=" << n;
      }
    }
}

TEST(PQFactors, TriangularBlocks) {
  const auto sym = symbols::figure_three_c();
  const CMatrix d = d_block(sym), e = e_block(sym);
  ASSERT_EQ(d.rows(), sym.r());
  ASSERT_EQ(e.rows(), sym.s());
  for (int i = 0; i < d.rows(); ++i) {
    EXPECT_EQ(d(i, i), sym.coeff(-sym.r()));
    for (int j = 0; j < i; ++j) EXPECT_EQ(d(i, j), Complex{});
  }
  for (int i = 0; i < e.rows(); ++i) {
    EXPECT_EQ(e(i, i), sym.coeff(sym.s()));
    for (int j = i + 1; j < e.cols(); ++j) EXPECT_EQ(e(i, j), Complex{});
  }
}

TEST(Fourier, Examples) {
  const CMatrix f2 = fourier_matrix(2);
  const double h = 1.0 / std::sqrt(2.0);
  expect_matrix(f2, {{h, h}, {h, -h}}, 1e-15);
  const CMatrix f = fourier_matrix(24);
  EXPECT_LE((f * f.adjoint() - CMatrix::Identity(24, 24)).norm(), 1e-12);
}

TEST(Fourier, DiagonalizesCirculant) {
  const auto sym = symbols::figure_two();
  const int n = 16;
  const CMatrix f = fourier_matrix(n);
  const CMatrix d = f.adjoint() * circulant_matrix(sym, n) * f;
  // F(i,j) = w^{ij}/sqrt(n), so column l of F is an eigenvector with eigenvalue a(w^l).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex expected = i == j ? eval_symbol(sym, unit_root(i, n)) : Complex{};
      EXPECT_NEAR(std::abs(d(i, j) - expected), 0.0, 1e-10);
    }
}

TEST(Noise, RademacherEntries) {
  const CMatrix x = sample_x(Distribution::rademacher, 40, 5);
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    EXPECT_EQ(x(i).imag(), 0.0);
    EXPECT_EQ(std::abs(x(i).real()), 1.0);
  }
  const CMatrix c = sample_x(Distribution::complex_rademacher, 40, 5);
  for (Eigen::Index i = 0; i < c.size(); ++i) EXPECT_NEAR(std::abs(c(i)), 1.0, 0.0);
}

TEST(Noise, IdentityBasisScaling) {
  const NoiseModel nm(Distribution::complex_gaussian, Basis::identity, ConstantSigma{1.0});
  const CMatrix x = sample_x(nm.dist(), 30, 9);
  const CMatrix y = sample_noise(nm, 30, 9);
  EXPECT_LE((y - x / std::sqrt(30.0)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Noise, Deterministic) {
  const NoiseModel nm(Distribution::real_gaussian, Basis::fourier, ConstantSigma{1.0});
  EXPECT_EQ((sample_noise(nm, 20, 3) - sample_noise(nm, 20, 3)).norm(), 0.0);
  EXPECT_GT((sample_noise(nm, 20, 3) - sample_noise(nm, 20, 4)).norm(), 0.0);
}

TEST(Noise, MomentsMatchDistribution) {
  const int n = 300;
  for (auto dist : {Distribution::complex_gaussian, Distribution::real_gaussian, Distribution::rademacher,
                    Distribution::complex_rademacher}) {
    const NoiseModel nm(dist, Basis::identity, ConstantSigma{1.0});
    const CMatrix x = sample_x(dist, n, 77);
    const double N = static_cast<double>(x.size());
    Complex mean{}, m2{};
    double abs2 = 0.0, abs4 = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      mean += x(i);
      m2 += x(i) * x(i);
      abs2 += std::norm(x(i));
      abs4 += std::norm(x(i)) * std::norm(x(i));
    }
    mean /= N;
    m2 /= N;
    abs2 /= N;
    abs4 /= N;
    const double se_mean = std::sqrt(1.0 / N);
    EXPECT_LE(std::abs(mean), 4.0 * std::sqrt(2.0) * se_mean) << to_string(dist);
    const double se_abs2 = std::sqrt(std::max(abs4 - 1.0, 1e-30) / N);
    if (abs4 - 1.0 > 1e-12) EXPECT_LE(std::abs(abs2 - 1.0), 5.0 * se_abs2) << to_string(dist);
    else EXPECT_NEAR(abs2, 1.0, 1e-12);
    const double se_m2 = std::sqrt(abs4 / N);
    EXPECT_LE(std::abs(m2 - nm.rho()), 5.0 * se_m2) << to_string(dist);
  }
}

TEST(Assemble, ZeroSigmaGivesToeplitz) {
  const ModelInstance m{symbols::mixed(), 12, NoiseModel(Distribution::complex_gaussian, Basis::identity, ConstantSigma{0.0}), 1};
  const auto a = assemble(m);
  EXPECT_EQ((a.M - toeplitz_matrix(m.sym, 12)).norm(), 0.0);
}

TEST(Assemble, DifferenceIsMinusPQ) {
  const ModelInstance m{symbols::figure_two(), 15, NoiseModel(Distribution::real_gaussian, Basis::fourier, ConstantSigma{0.7}), 42};
  const auto a = assemble(m);
  const auto pq = pq_factors(m.sym, 15);
  EXPECT_LE((a.M - a.S + pq.P * pq.Q).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Schedule, PowerLaw) {
  const NoiseModel nm(Distribution::complex_gaussian, Basis::identity, PowerSigma{1.0, 0.5});
  EXPECT_NEAR(nm.sigma_at(100), 0.1, 1e-15);
}

TEST(NoiseModel, JsonRoundTrip) {
  const NoiseModel nm(Distribution::complex_rademacher, Basis::fourier, PowerSigma{2.0, 0.25});
  const auto back = NoiseModel::from_json(nm.to_json());
  EXPECT_EQ(back.dist(), nm.dist());
  EXPECT_EQ(back.basis(), nm.basis());
  EXPECT_DOUBLE_EQ(back.sigma_at(16), nm.sigma_at(16));
}

TEST(NoiseModel, RejectsNonUnitary) {
  CMatrix u = CMatrix::Identity(3, 3);
  u(0, 1) = 0.5;
  EXPECT_THROW(NoiseModel(Distribution::complex_gaussian, Basis::explicit_unitary, ConstantSigma{1.0}, u), DomainError);
}
