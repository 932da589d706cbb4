#include <benchmark/benchmark.h>

#include "epi/polycert.hpp"

namespace {

void BM_BuildG(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(epi::build_g());
}
BENCHMARK(BM_BuildG)->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state, const char* id) {
  const auto g = epi::build_g();
  for (auto _ : state) benchmark::DoNotOptimize(epi::certify(id, g));
}
BENCHMARK_CAPTURE(BM_Certify, A, "A")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Certify, B, "B")->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(BM_Certify, C, "C")->Unit(benchmark::kMicrosecond);

}  // namespace
