#include <benchmark/benchmark.h>

#include "addfn/sieve.hpp"

namespace {

void BM_PrimeCount(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    std::uint64_t count = 0;
    addfn::for_each_prime(2, n, {}, [&](std::uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrimeCount)->RangeMultiplier(10)->Range(100000, 10000000)->Unit(benchmark::kMillisecond);

void BM_FactorizeWindow(benchmark::State& state) {
  const std::uint64_t hi = 100000000;
  const std::uint64_t lo = hi - static_cast<std::uint64_t>(state.range(0)) + 1;
  const auto aux = addfn::build_primes(10000);
  for (auto _ : state) {
    const auto seg = addfn::factorize_window(lo, hi, aux);
    benchmark::DoNotOptimize(seg.spf(hi));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FactorizeWindow)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_Iroot(benchmark::State& state) {
  std::uint64_t x = 0x9e3779b97f4a7c15ULL;
  for (auto _ : state) {
    x = x * 6364136223846793005ULL + 1442695040888963407ULL;
    benchmark::DoNotOptimize(addfn::iroot(x, 3));
  }
}
BENCHMARK(BM_Iroot);

}  // namespace

BENCHMARK_MAIN();
