#include <benchmark/benchmark.h>

#include "epi/epi.hpp"
#include "epi/moments.hpp"
#include "epi/pmf.hpp"

namespace {

using epi::Precision;
using epi::Real;

void BM_BinomialEntropies(benchmark::State& state) {
  const Real p = Real::parse("0.3", Precision{static_cast<int>(state.range(1))});
  for (auto _ : state) benchmark::DoNotOptimize(epi::binomial_entropies(state.range(0), p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BinomialEntropies)->Args({100, 50})->Args({500, 50})->Args({2000, 50})->Args({500, 200})
    ->Unit(benchmark::kMillisecond);

void BM_Convolve(benchmark::State& state) {
  const auto b = epi::binomial_pmf(state.range(0), Real::parse("0.3", Precision{50}));
  for (auto _ : state) benchmark::DoNotOptimize(epi::convolve(b, b));
}
BENCHMARK(BM_Convolve)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_IidSum(benchmark::State& state) {
  const auto b = epi::binomial_pmf(1, Real::parse("0.5", Precision{50}));
  for (auto _ : state) benchmark::DoNotOptimize(epi::iid_sum_pmf(b, state.range(0)));
}
BENCHMARK(BM_IidSum)->Arg(256)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

void BM_EpiGap(benchmark::State& state) {
  const Real p = Real::parse("0.37", Precision{50});
  for (auto _ : state) benchmark::DoNotOptimize(epi::epi_gap(state.range(0), state.range(0), p));
}
BENCHMARK(BM_EpiGap)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

void BM_GammaProfile(benchmark::State& state) {
  const Real p = Real::parse("0.3", Precision{50});
  for (auto _ : state) benchmark::DoNotOptimize(epi::cumulative_gamma_profile(500, p, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GammaProfile)->Arg(1)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
