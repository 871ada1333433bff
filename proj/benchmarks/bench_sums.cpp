#include <benchmark/benchmark.h>

#include "addfn/grid.hpp"
#include "addfn/sums.hpp"

namespace {

void BM_MomentSums(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto grid = addfn::geometric_grid(100, n, 9);
  const auto spec = addfn::builtin("big_omega");
  for (auto _ : state) {
    const auto sums = addfn::moment_sums(spec, grid);
    benchmark::DoNotOptimize(sums.rows.back().D);
  }
}
BENCHMARK(BM_MomentSums)->Arg(1000000)->Arg(10000000)->Unit(benchmark::kMillisecond);

void BM_ReferenceAllKinds(benchmark::State& state) {
  const auto grid = addfn::geometric_grid(100, static_cast<std::uint64_t>(state.range(0)), 9);
  for (auto _ : state) {
    for (const auto kind : addfn::kAllReferenceKinds) {
      benchmark::DoNotOptimize(addfn::reference_sum(kind, grid).points.back().value);
    }
  }
}
BENCHMARK(BM_ReferenceAllKinds)->Arg(1000000)->Unit(benchmark::kMillisecond);

}  // namespace
