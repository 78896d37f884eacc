#include <gtest/gtest.h>
#include <omp.h>

#include "tpz/harness.hpp"
#include "tpz/matgen.hpp"
#include "tpz/regions.hpp"

using namespace tpz;

namespace {

// Runs body with a fixed team size and restores the previous setting.
template <class F>
auto with_threads(int threads, F&& body) {
  const int saved = omp_get_max_threads();
  omp_set_num_threads(threads);
  auto out = body();
  omp_set_num_threads(saved);
  return out;
}

}  // namespace

TEST(Parallel, RegionRasterMatchesSerial) {
  const auto sym = symbols::figure_three_c();
  const Window w{-4.0, 4.0, -4.0, 4.0};
  const auto serial = region_raster_serial(sym, 0.7, w, 40, 40);
  for (int threads : {1, 3, 4}) {
    const auto par = with_threads(threads, [&] { return region_raster(sym, 0.7, w, 40, 40); });
    ASSERT_EQ(par.size(), serial.size());
    for (std::size_t i = 0; i < par.size(); ++i) {
      EXPECT_EQ(par[i].kind, serial[i].kind);
      EXPECT_EQ(par[i].delta, serial[i].delta);
      EXPECT_EQ(par[i].I_value, serial[i].I_value);
    }
  }
}

TEST(Parallel, SumProductMatchesSerial) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = random_even_graph(s, 4);
    std::vector<CMatrix> m;
    for (std::size_t e = 0; e < g.edges.size(); ++e) m.push_back(sample_x(Distribution::complex_gaussian, 7, s * 100 + e));
    const Complex serial = sum_product_value_serial(g, m);
    for (int threads : {1, 2, 4}) {
      const Complex par = with_threads(threads, [&] { return sum_product_value(g, m); });
      EXPECT_NEAR(std::abs(par - serial), 0.0, 1e-9 * (1.0 + std::abs(serial))) << s;
    }
    // Deterministic under a fixed team size.
    EXPECT_EQ(with_threads(3, [&] { return sum_product_value(g, m); }),
              with_threads(3, [&] { return sum_product_value(g, m); }));
  }
}

TEST(Parallel, NoiseIndependentOfThreads) {
  const CMatrix one = with_threads(1, [] { return sample_x(Distribution::complex_gaussian, 64, 9); });
  const CMatrix four = with_threads(4, [] { return sample_x(Distribution::complex_gaussian, 64, 9); });
  EXPECT_EQ((one - four).norm(), 0.0);
}

TEST(Parallel, OutlierRunIndependentOfThreads) {
  ExperimentConfig cfg;
  cfg.n = 50;
  cfg.trials = 4;
  const auto one = with_threads(1, [&] { return run_outliers(cfg).to_json(); });
  const auto four = with_threads(4, [&] { return run_outliers(cfg).to_json(); });
  EXPECT_EQ(one, four);
}
