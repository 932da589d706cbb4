#include <benchmark/benchmark.h>

#include "epi/asymptotics.hpp"
#include "epi/pmf.hpp"

namespace {

using epi::Precision;
using epi::Real;

void BM_SmoothedEntropy(benchmark::State& state) {
  const Precision prec{50};
  const auto b = epi::binomial_pmf(state.range(0), Real::parse("0.5", prec));
  const Real sigma = Real::parse("1e-3", prec);
  const Real tol = Real::parse("1e-20", prec);
  for (auto _ : state) benchmark::DoNotOptimize(epi::gaussian_smoothed_entropy(b, sigma, tol));
}
BENCHMARK(BM_SmoothedEntropy)->Arg(1)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_KnesslG(benchmark::State& state) {
  const auto b = epi::binomial_pmf(1, Real::parse("0.3", Precision{50}));
  for (auto _ : state) benchmark::DoNotOptimize(epi::knessl_g(b, state.range(0)));
}
BENCHMARK(BM_KnesslG)->Arg(512)->Arg(4096)->Unit(benchmark::kMillisecond);

}  // namespace
