// OpenMP kernels against their serial references, and condensation against
// per-entry determinants.
#include <benchmark/benchmark.h>

#include "pdlc/hierarchy.hpp"
#include "pdlc/logconcavity.hpp"

namespace {

pdlc::HierarchyOptions noSampling(int threads = 0) {
  pdlc::HierarchyOptions opts;
  opts.cross_check_fraction = 0.0;
  opts.threads = threads;
  return opts;
}

void BM_CondensationParallel(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto i_max = state.range(1);
  for (auto _ : state) {
    auto h = pdlc::buildHierarchy(pdlc::Kernel::pascal(), k, i_max, i_max, noSampling());
    benchmark::DoNotOptimize(h);
  }
}

void BM_CondensationSerial(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto i_max = state.range(1);
  for (auto _ : state) {
    auto h = pdlc::reference::buildHierarchy(pdlc::Kernel::pascal(), k, i_max, i_max);
    benchmark::DoNotOptimize(h);
  }
}

void BM_Direct(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto i_max = state.range(1);
  for (auto _ : state) {
    auto h = pdlc::buildHierarchyDirect(pdlc::Kernel::pascal(), k, i_max, i_max, noSampling());
    benchmark::DoNotOptimize(h);
  }
}

pdlc::BigGrid lcInput(std::int64_t i_max) {
  const auto h = pdlc::buildHierarchy(pdlc::Kernel::pascal(), 3, i_max, i_max, noSampling());
  return h.level(3).reframe(0, 0, static_cast<std::size_t>(i_max + 1),
                            static_cast<std::size_t>(i_max + 1));
}

void BM_LcGridParallel(benchmark::State& state) {
  const auto g = lcInput(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pdlc::lcGrid(g));
}

void BM_LcGridSerial(benchmark::State& state) {
  const auto g = lcInput(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(pdlc::reference::lcGrid(g));
}

}  // namespace

BENCHMARK(BM_CondensationParallel)->Args({6, 60})->Args({6, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CondensationSerial)->Args({6, 60})->Args({6, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Direct)->Args({6, 60})->Args({6, 100})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LcGridParallel)->Arg(60)->Arg(200)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_LcGridSerial)->Arg(60)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
