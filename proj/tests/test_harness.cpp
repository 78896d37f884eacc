#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tpz/harness.hpp"

using namespace tpz;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tpz_test_" + name);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST(Config, JsonRoundTrip) {
  ExperimentConfig cfg;
  cfg.sym = symbols::mixed();
  cfg.noise = NoiseModel(Distribution::rademacher, Basis::fourier, PowerSigma{0.5, 0.25});
  cfg.n = 123;
  cfg.seed = 77;
  cfg.support_margin = 0.02;
  cfg.cells.edges = {0.0, 0.3, 0.7};
  cfg.clt.trials = 50;
  const auto j = cfg.to_json();
  EXPECT_EQ(ExperimentConfig::from_json(j).to_json(), j);
}

TEST(Config, BundledNameAndDefaults) {
  const auto cfg = ExperimentConfig::from_json({{"sym", "lambda+lambda^-1"}});
  EXPECT_EQ(cfg.sym.r(), 1);
  EXPECT_EQ(cfg.sym.s(), 1);
  EXPECT_EQ(cfg.n, 400);
  EXPECT_NEAR(cfg.margin(), 0.05 * cfg.sym.scale(), 1e-15);
  EXPECT_THROW(ExperimentConfig::from_json({{"sym", "no-such-symbol"}}), std::exception);
  ExperimentConfig bad;
  bad.n = 1;
  EXPECT_THROW(bad.validate(), std::exception);
}

TEST(Cells, Indexing) {
  const CellGrid grid(CellSpec{});
  EXPECT_EQ(grid.size(), 4);
  EXPECT_EQ(grid.cell_of(0.3), 0);
  EXPECT_EQ(grid.cell_of(-0.3), 1);
  EXPECT_EQ(grid.cell_of(Complex(0.0, 0.65)), 2);
  EXPECT_EQ(grid.cell_of(Complex(0.0, -0.65)), 3);
  EXPECT_EQ(grid.cell_of(0.8), -1);
}

TEST(Cells, SummaryAndDiscrepancy) {
  const auto s = summarize_counts({{1, 2}, {3, 4}});
  EXPECT_DOUBLE_EQ(s.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(s.mean[1], 3.0);
  EXPECT_DOUBLE_EQ(s.se[0], 1.0);
  const auto rep = compare_counts(10, {{1, 3}, {1, 3}}, {{2, 2}, {2, 2}});
  EXPECT_DOUBLE_EQ(rep.discrepancy, 0.5);
  EXPECT_DOUBLE_EQ(rep.relative[0], 0.5);
}

TEST(Outliers, ExtractLabels) {
  const std::vector<Complex> eigs{0.1, 0.9, 1.5};
  const auto out = extract_outliers(symbols::shift(), 0.6, eigs, 0.05);
  ASSERT_EQ(out.size(), 2u);
  for (const auto& o : out) {
    if (std::abs(o.z - 0.1) < 1e-12) EXPECT_EQ(o.delta, 1);
    else EXPECT_EQ(o.delta, 0);
  }
}

TEST(Outliers, SmallRunDeterministic) {
  ExperimentConfig cfg;
  cfg.n = 60;
  cfg.trials = 3;
  const auto a = run_outliers(cfg).to_json(), b = run_outliers(cfg).to_json();
  EXPECT_EQ(a, b);
  const auto s1 = model_spectrum(cfg.sym, cfg.noise, 60, 1, 0), s2 = model_spectrum(cfg.sym, cfg.noise, 60, 1, 1);
  EXPECT_EQ(s1.size(), 60u);
  EXPECT_NE(s1, s2);
}

TEST(Commands, SpectrumCsvDeterministic) {
  ExperimentConfig cfg;
  cfg.n = 40;
  cfg.out_dir = scratch("spec_a");
  cmd_spectrum(cfg);
  const auto first = slurp(cfg.out_dir / "spectrum.csv");
  cfg.out_dir = scratch("spec_b");
  cmd_spectrum(cfg);
  EXPECT_EQ(first, slurp(cfg.out_dir / "spectrum.csv"));
  EXPECT_EQ(first.rfind("re,im", 0), 0u);
}

TEST(Commands, RegionsCsv) {
  ExperimentConfig cfg;
  cfg.grid_nx = 8;
  cfg.grid_ny = 6;
  cfg.out_dir = scratch("regions");
  cmd_regions(cfg);
  const auto text = slurp(cfg.out_dir / "regions.csv");
  EXPECT_EQ(text.rfind("re,im,kind,delta,I_value", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 8 * 6);
}

TEST(SumProduct, IdentityPair) {
  const int n = 5;
  DirectedMultigraph g{2, {{0, 1}, {1, 0}}};
  const std::vector<CMatrix> m(2, CMatrix::Identity(n, n));
  const auto sp = sum_product(g, m);
  EXPECT_NEAR(std::abs(sp.value - static_cast<double>(n)), 0.0, 1e-12);
  EXPECT_NEAR(sp.bound, n, 1e-12);
  EXPECT_TRUE(sp.holds);
}

TEST(SumProduct, RankOneBound) {
  const int n = 6;
  CVector u = CVector::Ones(n) / std::sqrt(static_cast<double>(n));
  DirectedMultigraph g{2, {{0, 1}, {1, 0}}};
  const std::vector<CMatrix> m{u * u.adjoint(), CMatrix::Identity(n, n)};
  const auto sp = sum_product(g, m, 0, 1);
  EXPECT_LE(std::abs(sp.value), std::sqrt(static_cast<double>(n)) + 1e-12);
  EXPECT_NEAR(sp.rank_bound, std::sqrt(static_cast<double>(n)), 1e-9);
  EXPECT_TRUE(sp.holds);
}

TEST(SumProduct, SingleVertexLoops) {
  CMatrix a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << Complex(0.0, 1.0), 5.0, 6.0, -1.0;
  DirectedMultigraph g{1, {{0, 0}, {0, 0}}};
  const std::vector<CMatrix> m{a, b};
  EXPECT_NEAR(std::abs(sum_product_value(g, m) - (a(0, 0) * b(0, 0) + a(1, 1) * b(1, 1))), 0.0, 1e-14);
}

TEST(SumProduct, Errors) {
  const std::vector<CMatrix> one{CMatrix::Identity(2, 2)};
  EXPECT_THROW(sum_product(DirectedMultigraph{2, {{0, 1}}}, one), DomainError);
  const std::vector<CMatrix> two(2, CMatrix::Identity(2, 2));
  EXPECT_THROW(sum_product(DirectedMultigraph{4, {{0, 1}, {1, 0}}}, two), DomainError);
}

TEST(SumProduct, RandomGraphsEvenConnected) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto g = random_even_graph(s, 4);
    EXPECT_TRUE(g.even());
    EXPECT_TRUE(g.weakly_connected());
    EXPECT_LE(g.vertices, 4);
  }
}

TEST(Clt, BatteryShape) {
  const auto cases = clt_battery(CltSpec{});
  int screened_gaussian = 0, screened_non = 0;
  for (const auto& c : cases) {
    if (c.expect_gaussian == 1) ++screened_gaussian;
    if (c.expect_gaussian == 0) ++screened_non;
  }
  EXPECT_GE(cases.size(), 7u);
  EXPECT_GE(screened_gaussian, 1);
  EXPECT_EQ(screened_non, 1);
  const auto mats = clt_matrices(cases.front());
  EXPECT_EQ(static_cast<int>(mats.size()), cases.front().k);
}

TEST(Clt, SmallCaseMoments) {
  CltCase c{"small", 2, 40, Distribution::complex_gaussian, Basis::identity, false, true, -1};
  const auto out = run_clt_case(c, 2000, 3, 5.0, 6.0);
  EXPECT_TRUE(out.abs2.pass()) << out.to_json().dump();
  EXPECT_TRUE(out.pass);
}

TEST(Checks, FastDeterministicChecks) {
  for (const auto& c : {check_determinant_identities(1), check_szego(), check_stable_ratio(), check_riemann_decay(),
                        check_bundled_symbols()})
    EXPECT_TRUE(c.pass) << c.name << " " << c.detail.dump();
}

TEST(Checks, RankAndConvergence) {
  const auto rank = check_rank_theorem(2, 20);
  EXPECT_TRUE(rank.pass) << rank.detail.dump();
  const auto conv = check_resolvent_convergence(2, 4);
  EXPECT_TRUE(conv.pass) << conv.detail.dump();
}
