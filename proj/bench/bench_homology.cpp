// Serial reference kernels against their OpenMP versions. Thread count
// follows TWISTHC_THREADS (or OMP_NUM_THREADS).

#include <benchmark/benchmark.h>

#include "twisthc/homology.hpp"
#include "twisthc/local_model.hpp"

namespace {

using namespace twisthc;

void BM_BoundaryMatrix(benchmark::State& state, Execution exec) {
  const auto sigma = state.range(0);
  const auto M = state.range(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(boundary_matrix(sigma, M, SignConvention{}, false, exec));
  }
}

void BM_Homology(benchmark::State& state, Execution exec) {
  const auto d = boundary_matrix(state.range(0), state.range(1), SignConvention{});
  for (auto _ : state) benchmark::DoNotOptimize(homology_report(d, exec));
}

void BM_ActionProfile(benchmark::State& state) {
  const auto params = LocalModelParams::for_sigma(3);
  for (auto _ : state) benchmark::DoNotOptimize(action_profile(7, 4, params, state.range(0)));
}

}  // namespace

BENCHMARK_CAPTURE(BM_BoundaryMatrix, serial, Execution::Serial)->Args({3, 30})->Args({8, 40})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_BoundaryMatrix, parallel, Execution::Parallel)->Args({3, 30})->Args({8, 40})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Homology, serial, Execution::Serial)->Args({3, 30})->Args({5, 30})->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Homology, parallel, Execution::Parallel)->Args({3, 30})->Args({5, 30})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ActionProfile)->Arg(10000)->Arg(1000000);

int main(int argc, char** argv) {
  configure_threads_from_env();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
