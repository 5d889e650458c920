#include <benchmark/benchmark.h>

#include <random>

#include "oracles.hpp"
#include "socioplex/persistence.hpp"
#include "socioplex/weight_calibration.hpp"

using namespace socioplex;

namespace {

DistanceMatrix agent_matrix(std::size_t n) {
  std::mt19937_64 rng(n);
  return distance_matrix(testing::random_agents(rng, n), Weights{});
}

void BM_BuildFiltration(benchmark::State& state) {
  const auto m = agent_matrix(static_cast<std::size_t>(state.range(0)));
  const int max_dim = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(build_filtration(m, max_dim));
}
BENCHMARK(BM_BuildFiltration)->Args({30, 2})->Args({50, 2})->Args({50, 3})->Unit(benchmark::kMillisecond);

void BM_Reduce(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const auto m = testing::random_real_matrix(rng, static_cast<std::size_t>(state.range(0)));
  const auto bm = boundary_matrix(build_filtration(m, 2));
  const auto mode = state.range(1) ? ReductionMode::twist : ReductionMode::standard;
  for (auto _ : state) benchmark::DoNotOptimize(reduce(bm, {mode, false}));
  state.SetLabel(state.range(1) ? "twist" : "standard");
}
BENCHMARK(BM_Reduce)->ArgsProduct({{20, 40, 60}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Pipeline50(benchmark::State& state) {
  const auto m = agent_matrix(50);
  for (auto _ : state) {
    PersistentHomology ph(build_filtration(m, 3));
    benchmark::DoNotOptimize(ph.diagram().size());
  }
}
BENCHMARK(BM_Pipeline50)->Unit(benchmark::kMillisecond);

void BM_FitWeights(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto agents = testing::random_agents(rng, static_cast<std::size_t>(state.range(0)));
  CalibrationConfig config;
  config.label_source = LabelSource::d4_labels;
  for (auto _ : state) benchmark::DoNotOptimize(fit_weights(agents, config));
}
BENCHMARK(BM_FitWeights)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
