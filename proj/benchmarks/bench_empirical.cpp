#include <benchmark/benchmark.h>

#include "addfn/empirical.hpp"

namespace {

void BM_EmpiricalMoments(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  addfn::SieveOptions opts;
  opts.workers = static_cast<unsigned>(state.range(1));
  const auto spec = addfn::builtin("log_phi");
  for (auto _ : state) {
    benchmark::DoNotOptimize(addfn::empirical_moments(spec, n, opts).variance);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalMoments)->Args({1000000, 1})->Args({1000000, 4})->Args({10000000, 1})
    ->Unit(benchmark::kMillisecond);

void BM_MeanViaCounts(benchmark::State& state) {
  const auto spec = addfn::builtin("big_omega");
  for (auto _ : state) {
    benchmark::DoNotOptimize(addfn::mean_via_counts(spec, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_MeanViaCounts)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

}  // namespace
