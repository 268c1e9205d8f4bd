#include <benchmark/benchmark.h>

#include "lucaskit/census.hpp"
#include "lucaskit/harmonic.hpp"
#include "lucaskit/lucas.hpp"
#include "lucaskit/modarith.hpp"

namespace {

using namespace lucaskit;

void BM_BinomPascal(benchmark::State& state) {
  const Modulus m(13, 2);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binom_pascal(n, n / 2, m));
}
BENCHMARK(BM_BinomPascal)->RangeMultiplier(4)->Range(128, 8192);

void BM_BinomFactored(benchmark::State& state) {
  const Modulus m(13, 2);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binom_factored(n, n / 2, m));
}
BENCHMARK(BM_BinomFactored)->RangeMultiplier(64)->Range(128, 1 << 24);

void BM_HarmonicTable(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    set_harmonic_cache_capacity(0);  // defeat the memo store
    benchmark::DoNotOptimize(harmonic_table(p));
  }
  set_harmonic_cache_capacity(64);
}
BENCHMARK(BM_HarmonicTable)->Arg(1093)->Arg(99991);

void BM_DsetHarmonic(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dset_harmonic(p));
}
BENCHMARK(BM_DsetHarmonic)->Arg(499)->Arg(4999);

void BM_DsetRotation(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dset_rotation(p));
}
BENCHMARK(BM_DsetRotation)->Arg(499);

void BM_DsetBruteforce(benchmark::State& state) {
  const auto p = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dset_bruteforce(p));
}
BENCHMARK(BM_DsetBruteforce)->Arg(499);

void BM_CensusRange(benchmark::State& state) {
  CensusOptions opts;
  opts.p_min = 2;
  opts.p_max = 300;
  opts.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_census(opts));
}
BENCHMARK(BM_CensusRange)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
