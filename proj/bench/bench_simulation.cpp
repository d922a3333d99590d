#include <benchmark/benchmark.h>

#include "amsel/simulation.hpp"

using namespace amsel;

namespace {

ExperimentConfig bench_config(int trials) {
  ExperimentConfig config;
  config.instance = ProblemInstance::identical(10, {1, 1}, 40);
  for (const char* id : {"round-robin", "random", "biased-robin", "scla", "interval:1.96", "gittins"}) {
    config.policies.push_back(PolicySpec::parse(id));
  }
  config.trials = trials;
  config.seed = 1;
  return config;
}

// The Gittins cache is warmed once so both kernels measure simulation only.
GittinsCache& warm_cache() {
  static GittinsCache cache;
  static const bool warmed = (run_experiment_serial(bench_config(200), &cache), true);
  (void)warmed;
  return cache;
}

void BM_Serial(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  auto& cache = warm_cache();
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment_serial(config, &cache));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(config.policies.size()));
}

void BM_Parallel(benchmark::State& state) {
  const auto config = bench_config(static_cast<int>(state.range(0)));
  auto& cache = warm_cache();
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(config, &cache, threads));
  state.SetItemsProcessed(state.iterations() * state.range(0) * static_cast<int64_t>(config.policies.size()));
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)
    ->ArgsProduct({{200, 1000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

BENCHMARK_MAIN();
