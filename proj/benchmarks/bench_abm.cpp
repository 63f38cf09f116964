#include <benchmark/benchmark.h>

#include "caputolab/caputolab.hpp"

using namespace caputolab;

static void BM_WeightTable(benchmark::State& state) {
  const auto steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(make_weight_table(0.99975, steps));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_WeightTable)->Arg(1000)->Arg(100000);

static void BM_HnnIntegrate(benchmark::State& state) {
  SolverConfig cfg;
  cfg.h = 0.01;
  cfg.T = static_cast<double>(state.range(0));
  const auto ivp = hnn::make_ivp({}, 0.99975, hnn::kReferenceX1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(abm_integrate(ivp, cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.steps()));
}
BENCHMARK(BM_HnnIntegrate)->Arg(10)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  SolverConfig cfg;
  cfg.h = 0.01;
  cfg.T = 300.0;
  const Trajectory tr = abm_integrate(hnn::make_ivp({}, 0.99975, hnn::kReferenceX1), cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(dynamics::classify_trajectory(tr));
  }
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

static void BM_Eigenvalues(benchmark::State& state) {
  const auto j = hnn::hnn_jacobian(hnn::kReferenceX1, {});
  for (auto _ : state) {
    benchmark::DoNotOptimize(stability::eigenvalues_3x3(j));
  }
}
BENCHMARK(BM_Eigenvalues);
BENCHMARK_MAIN();
