// Parallel MC kernels vs their serial references.
//
//   ./build/bench/bench_mc --benchmark_min_time=1
//   OMP_NUM_THREADS=8 ./build/bench/bench_mc

#include <benchmark/benchmark.h>

#include "probkin/monte_carlo.hpp"

using namespace probkin;

namespace {

const MessageBand kBand(0.75, 0.05);

void BM_PosteriorParallel(benchmark::State& state) {
  const McConfig cfg{static_cast<std::size_t>(state.range(0)), 42, 64};
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_posterior_quadrants(SecondOrderPrior::uniform(), kBand, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_PosteriorSerial(benchmark::State& state) {
  const McConfig cfg{static_cast<std::size_t>(state.range(0)), 42, 64};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc_posterior_quadrants_serial(SecondOrderPrior::uniform(), kBand, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IndependenceBinned(benchmark::State& state) {
  const McConfig cfg{static_cast<std::size_t>(state.range(0)), 42, 64};
  for (auto _ : state) {
    benchmark::DoNotOptimize(independence_check(SecondOrderPrior::uniform(), cfg, 20));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IndependenceDirect(benchmark::State& state) {
  const McConfig cfg{static_cast<std::size_t>(state.range(0)), 42, 64};
  const auto m = marginal_samples(SecondOrderPrior::uniform(), cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(independence_deviation_direct(m.cond_red, m.blue, 20));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_PosteriorParallel)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PosteriorSerial)->Arg(100'000)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndependenceBinned)->Arg(100'000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_IndependenceDirect)->Arg(100'000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
