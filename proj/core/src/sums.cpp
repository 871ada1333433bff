#include "addfn/sums.hpp"

#include <cmath>

#include <fmt/format.h>

#include "addfn/compensated.hpp"
#include "addfn/errors.hpp"
#include "addfn/grid.hpp"

namespace addfn {

namespace {

struct PairSum {
  CompensatedSum first;
  CompensatedSum second;
};

// Walks primes ascending, snapshotting the running sums whenever the next prime
// would exceed the bound for the current grid point.
template <class PrimeSource>
std::vector<PairSum> snapshot_sums(const AdditiveFunctionSpec& spec, unsigned alpha,
                                   std::span<const std::uint64_t> bounds, PrimeSource&& source) {
  std::vector<PairSum> snaps(bounds.size());
  PairSum running;
  std::size_t next = 0;
  source([&](std::uint64_t p) {
    while (next < bounds.size() && p > bounds[next]) snaps[next++] = running;
    const double value = spec(p, alpha);
    const double weight = static_cast<double>(make_prime_power(p, alpha).value);
    running.first += value / weight;
    running.second += value * value / weight;
  });
  while (next < bounds.size()) snaps[next++] = running;
  return snaps;
}

}  // namespace

SumGrid moment_sums(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                    const SieveOptions& options) {
  check_grid(grid, 2);
  const std::uint64_t top = grid.back();
  if (top > options.max_n) {
    throw ResourceError(fmt::format("n = {} exceeds sieve budget {}", top, options.max_n));
  }

  SumGrid out{spec.name(), std::vector<SumRow>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) out.rows[i].n = grid[i];

  const auto primes = snapshot_sums(spec, 1, grid, [&](auto&& visit) {
    for_each_prime(2, top, options, visit);
  });

  const unsigned alpha_max = max_exponent(top);
  const std::size_t tails = alpha_max >= 2 ? alpha_max - 1 : 0;
  for (auto& row : out.rows) {
    row.tail_A.assign(tails, 0.0);
    row.tail_D.assign(tails, 0.0);
  }
  const PrimeTable small = build_primes(std::max<std::uint64_t>(2, iroot(top, 2)), options);
  std::vector<std::vector<PairSum>> tail_snaps;
  for (unsigned alpha = 2; alpha <= alpha_max; ++alpha) {
    std::vector<std::uint64_t> bounds(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) bounds[i] = iroot(grid[i], alpha);
    tail_snaps.push_back(snapshot_sums(spec, alpha, bounds, [&](auto&& visit) {
      for (const std::uint64_t p : small.primes()) {
        if (p > bounds.back()) break;
        visit(p);
      }
    }));
  }

  for (std::size_t i = 0; i < grid.size(); ++i) {
    SumRow& row = out.rows[i];
    row.A_star = primes[i].first.value();
    row.D_star = primes[i].second.value();
    CompensatedSum a(row.A_star);
    CompensatedSum d(row.D_star);
    for (std::size_t k = 0; k < tails; ++k) {
      row.tail_A[k] = tail_snaps[k][i].first.value();
      row.tail_D[k] = tail_snaps[k][i].second.value();
      a += tail_snaps[k][i].first;
      d += tail_snaps[k][i].second;
    }
    row.A = a.value();
    row.D = d.value();
  }
  return out;
}

std::vector<DeltaPoint> delta_series(const SumGrid& sums) {
  std::vector<DeltaPoint> out;
  out.reserve(sums.rows.size());
  for (const auto& row : sums.rows) {
    CompensatedSum a;
    CompensatedSum d;
    for (const double t : row.tail_A) a += t;
    for (const double t : row.tail_D) d += t;
    out.push_back({row.n, a.value(), d.value()});
  }
  return out;
}

std::vector<DeltaPoint> delta_series(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                                     const SieveOptions& options) {
  return delta_series(moment_sums(spec, grid, options));
}

std::string_view to_string(ReferenceKind kind) {
  switch (kind) {
    case ReferenceKind::recip_primes: return "recip_primes";
    case ReferenceKind::logp_over_p: return "logp_over_p";
    case ReferenceKind::log2p_over_p: return "log2p_over_p";
    case ReferenceKind::logpp_over_pp: return "logpp_over_pp";
    case ReferenceKind::log2pp_over_pp: return "log2pp_over_pp";
  }
  return "unknown";
}

ReferenceKind parse_reference_kind(std::string_view text) {
  for (const auto kind : kAllReferenceKinds) {
    if (to_string(kind) == text) return kind;
  }
  throw SpecError(fmt::format("unknown reference kind '{}'", text));
}

double reference_main_term(ReferenceKind kind, std::uint64_t n) {
  const double ln = std::log(static_cast<double>(n));
  switch (kind) {
    case ReferenceKind::recip_primes: return std::log(ln);
    case ReferenceKind::logp_over_p:
    case ReferenceKind::logpp_over_pp: return ln;
    case ReferenceKind::log2p_over_p:
    case ReferenceKind::log2pp_over_pp: return 0.5 * ln * ln;
  }
  return 0.0;
}

ReferenceSumSeries reference_sum(ReferenceKind kind, std::span<const std::uint64_t> grid,
                                 const SieveOptions& options) {
  // Each kind is one column of the moment sums of omega (1/p) or log (ln p^a).
  const bool reciprocal = kind == ReferenceKind::recip_primes;
  const SumGrid sums = moment_sums(builtin(reciprocal ? "omega" : "log"), grid, options);
  ReferenceSumSeries out{kind, {}};
  out.points.reserve(sums.rows.size());
  for (const auto& row : sums.rows) {
    double value = 0.0;
    switch (kind) {
      case ReferenceKind::recip_primes:
      case ReferenceKind::logp_over_p: value = row.A_star; break;
      case ReferenceKind::log2p_over_p: value = row.D_star; break;
      case ReferenceKind::logpp_over_pp: value = row.A; break;
      case ReferenceKind::log2pp_over_pp: value = row.D; break;
    }
    out.points.push_back({row.n, value, reference_main_term(kind, row.n)});
  }
  return out;
}

double transform_sum(const std::function<double(std::uint64_t)>& g,
                     const std::function<double(double)>& threshold, double x,
                     const SieveOptions& options) {
  const double bound = threshold(x);
  if (!(bound >= 2.0)) return 0.0;
  if (bound > static_cast<double>(options.max_n)) {
    throw ResourceError(fmt::format("transform_sum: threshold {} exceeds sieve budget", bound));
  }
  const auto limit = static_cast<std::uint64_t>(std::floor(bound));
  CompensatedSum total;
  for_each_prime(2, limit, options, [&](std::uint64_t p) { total += g(p); });
  return total.value();
}

}  // namespace addfn
