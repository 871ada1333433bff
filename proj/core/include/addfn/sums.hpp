#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addfn/functions.hpp"
#include "addfn/sieve.hpp"

namespace addfn {

/// Truncated prime-power sums of f at one grid point n.
///
///   A(n)  = sum_{p^a <= n} f(p^a) / p^a      D(n)  = sum_{p^a <= n} f(p^a)^2 / p^a
///   A*(n) = sum_{p <= n}   f(p)   / p        D*(n) = sum_{p <= n}   f(p)^2   / p
///
/// tail_A[k] / tail_D[k] hold the exponent a = k + 2 groups, i.e.
/// sum_{p <= n^(1/a)} f(p^a) / p^a and its squared analogue, so that
/// A = A* + sum(tail_A) and D = D* + sum(tail_D).
struct SumRow {
  std::uint64_t n = 0;
  double A = 0.0;
  double D = 0.0;
  double A_star = 0.0;
  double D_star = 0.0;
  std::vector<double> tail_A;
  std::vector<double> tail_D;

  [[nodiscard]] double delta_A() const { return A - A_star; }
  [[nodiscard]] double delta_D() const { return D - D_star; }
};

struct SumGrid {
  std::string function;
  std::vector<SumRow> rows;
};

/// Exact sums on every grid point, one ascending pass per exponent.
/// Grid must be strictly ascending with min >= 2; max(grid) <= options.max_n.
SumGrid moment_sums(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                    const SieveOptions& options = {});

struct DeltaPoint {
  std::uint64_t n = 0;
  double delta_A = 0.0;
  double delta_D = 0.0;
};

/// A(n) - A*(n) and D(n) - D*(n): the a >= 2 prime-power tails.
std::vector<DeltaPoint> delta_series(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                                     const SieveOptions& options = {});
std::vector<DeltaPoint> delta_series(const SumGrid& sums);

enum class ReferenceKind {
  recip_primes,    // sum_{p<=n} 1/p               ~ ln ln n
  logp_over_p,     // sum_{p<=n} ln p / p          ~ ln n
  log2p_over_p,    // sum_{p<=n} ln^2 p / p        ~ ln^2 n / 2
  logpp_over_pp,   // sum_{p^a<=n} ln p^a / p^a    ~ ln n
  log2pp_over_pp,  // sum_{p^a<=n} ln^2 p^a / p^a  ~ ln^2 n / 2
};

inline constexpr ReferenceKind kAllReferenceKinds[] = {
    ReferenceKind::recip_primes, ReferenceKind::logp_over_p, ReferenceKind::log2p_over_p,
    ReferenceKind::logpp_over_pp, ReferenceKind::log2pp_over_pp};

std::string_view to_string(ReferenceKind kind);
ReferenceKind parse_reference_kind(std::string_view text);

/// Main term of a reference kind at n (real-valued even where ln ln n < 0).
double reference_main_term(ReferenceKind kind, std::uint64_t n);

struct ReferencePoint {
  std::uint64_t n = 0;
  double value = 0.0;
  double main_term = 0.0;
  [[nodiscard]] double remainder() const { return value - main_term; }
};

struct ReferenceSumSeries {
  ReferenceKind kind = ReferenceKind::recip_primes;
  std::vector<ReferencePoint> points;
};

ReferenceSumSeries reference_sum(ReferenceKind kind, std::span<const std::uint64_t> grid,
                                 const SieveOptions& options = {});

/// sum_{p <= threshold(x)} g(p) = sum_{phi(p) <= x} g(p) for strictly
/// increasing phi, where threshold is phi's inverse. Returns 0 when the
/// threshold is below 2.
double transform_sum(const std::function<double(std::uint64_t)>& g,
                     const std::function<double(double)>& threshold, double x,
                     const SieveOptions& options = {});

}  // namespace addfn
