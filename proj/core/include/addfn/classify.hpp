#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addfn/functions.hpp"
#include "addfn/sieve.hpp"
#include "addfn/sums.hpp"

namespace addfn {

// Boundedness cannot be decided from finitely many terms. Every verdict here is
// a threshold heuristic and always travels with the series it was read from.

enum class Verdict { bounded, unbounded, inconclusive };
enum class ProxyVerdict { proxy_satisfied, proxy_violated, inconclusive };

std::string_view to_string(Verdict v);
std::string_view to_string(ProxyVerdict v);

struct Thresholds {
  /// Class S: late two-decade tail increment, scaled by max(1, main-term increment).
  double tail = 0.05;
  /// Class-H proxy: final ln D*(n) / ln ln n below this (and falling) => satisfied.
  double h_satisfied = 0.5;
  /// Class-H proxy: last three values all above this => violated.
  double h_violated = 1.0;
  /// Growth: M(N) <= M(N/100) * (1 + plateau) => bounded.
  double growth_plateau = 0.01;
};

struct ClassSResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::uint64_t> grid;
  std::vector<double> delta_A;
  std::vector<double> delta_D;
  /// Late-window increments |Delta(N) - Delta(N/100)| / max(1, |main(N) - main(N/100)|).
  double scaled_increment_A = 0.0;
  double scaled_increment_D = 0.0;
};

struct ProxyResult {
  ProxyVerdict verdict = ProxyVerdict::inconclusive;
  std::vector<std::uint64_t> grid;
  /// ln D*(n) / ln ln n; NaN where D*(n) <= 1 (those n are listed in `skipped`).
  std::vector<double> series;
  std::vector<std::uint64_t> skipped;
};

struct GrowthResult {
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::uint64_t> grid;
  /// M(n) = max_{2 <= m <= n} |f(m)| / ln m.
  std::vector<double> series;
};

/// Pure verdicts from precomputed sums. The grid must span >= 3 decades.
ClassSResult class_s_check(const SumGrid& sums, const Thresholds& thresholds = {});
ProxyResult class_h_proxy_check(const SumGrid& sums, const Thresholds& thresholds = {});
GrowthResult growth_verdict(std::span<const std::uint64_t> grid, std::span<const double> series,
                            const Thresholds& thresholds = {});

ClassSResult class_s_check(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                           const Thresholds& thresholds = {}, const SieveOptions& options = {});
ProxyResult class_h_proxy_check(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                                const Thresholds& thresholds = {}, const SieveOptions& options = {});

/// Streams one factorization pass up to grid.back() (>= 10).
GrowthResult growth_check(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                          const Thresholds& thresholds = {}, const SieveOptions& options = {});

struct ClassReport {
  std::string function;
  std::vector<std::uint64_t> grid;
  ClassSResult s;
  ProxyResult h;
  GrowthResult growth;
  bool growth_computed = false;
  Thresholds thresholds;
};

ClassReport classify(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                     const Thresholds& thresholds = {}, const SieveOptions& options = {},
                     bool with_growth = true);

}  // namespace addfn
