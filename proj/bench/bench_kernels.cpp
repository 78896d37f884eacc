// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include "tpz/harness.hpp"
#include "tpz/matgen.hpp"
#include "tpz/regions.hpp"

using namespace tpz;

namespace {

const Window kWindow{-4.0, 4.0, -4.0, 4.0};

void BM_RegionRasterSerial(benchmark::State& state) {
  const auto sym = symbols::figure_two();
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(region_raster_serial(sym, 0.5, kWindow, side, side));
  state.SetItemsProcessed(state.iterations() * side * side);
}

void BM_RegionRasterParallel(benchmark::State& state) {
  const auto sym = symbols::figure_two();
  const int side = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(region_raster(sym, 0.5, kWindow, side, side));
  state.SetItemsProcessed(state.iterations() * side * side);
}

struct GraphCase {
  DirectedMultigraph graph;
  std::vector<CMatrix> mats;
};

GraphCase square_case(int n) {
  GraphCase c{{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {2, 0}}}, {}};
  for (std::size_t e = 0; e < c.graph.edges.size(); ++e) c.mats.push_back(sample_x(Distribution::complex_gaussian, n, e));
  return c;
}

void BM_SumProductSerial(benchmark::State& state) {
  const auto c = square_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sum_product_value_serial(c.graph, c.mats));
}

void BM_SumProductParallel(benchmark::State& state) {
  const auto c = square_case(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(sum_product_value(c.graph, c.mats));
}

}  // namespace

BENCHMARK(BM_RegionRasterSerial)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RegionRasterParallel)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SumProductSerial)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SumProductParallel)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
