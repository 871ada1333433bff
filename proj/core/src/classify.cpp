#include "addfn/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "addfn/empirical.hpp"
#include "addfn/errors.hpp"
#include "addfn/grid.hpp"

namespace addfn {

namespace {

constexpr double kTwoDecades = 100.0;

std::vector<std::uint64_t> grid_of(const SumGrid& sums) {
  std::vector<std::uint64_t> grid;
  grid.reserve(sums.rows.size());
  for (const auto& row : sums.rows) grid.push_back(row.n);
  return grid;
}

void require_three_decades(std::span<const std::uint64_t> grid) {
  check_grid(grid, 2);
  if (static_cast<double>(grid.back()) < 1000.0 * static_cast<double>(grid.front())) {
    throw PreconditionError("class checks need a grid spanning at least 3 decades");
  }
}

// Indices of the points nearest N/100 and N/10^4.
struct Windows {
  std::size_t last;
  std::size_t mid;
  std::size_t early;
};

Windows two_decade_windows(std::span<const std::uint64_t> grid) {
  const double top = static_cast<double>(grid.back());
  return {grid.size() - 1, nearest_index(grid, top / kTwoDecades),
          nearest_index(grid, top / (kTwoDecades * kTwoDecades))};
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::unbounded: return "unbounded";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(ProxyVerdict v) {
  switch (v) {
    case ProxyVerdict::proxy_satisfied: return "proxy-satisfied";
    case ProxyVerdict::proxy_violated: return "proxy-violated";
    case ProxyVerdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

ClassSResult class_s_check(const SumGrid& sums, const Thresholds& thresholds) {
  ClassSResult out;
  out.grid = grid_of(sums);
  require_three_decades(out.grid);
  for (const auto& d : delta_series(sums)) {
    out.delta_A.push_back(d.delta_A);
    out.delta_D.push_back(d.delta_D);
  }
  const auto [last, mid, early] = two_decade_windows(out.grid);
  const auto& rows = sums.rows;

  // Tails are compared against the growth of the strongly additive main term
  // over the same window, so rescaling f does not change the verdict.
  const auto scaled = [&](const std::vector<double>& delta, auto main) {
    const double inc = std::abs(delta[last] - delta[mid]);
    const double main_inc = std::abs(main(rows[last]) - main(rows[mid]));
    return inc / std::max(1.0, main_inc);
  };
  const auto main_A = [](const SumRow& r) { return r.A_star; };
  const auto main_D = [](const SumRow& r) { return r.D_star; };
  out.scaled_increment_A = scaled(out.delta_A, main_A);
  out.scaled_increment_D = scaled(out.delta_D, main_D);

  const auto growing = [&](const std::vector<double>& delta, double scaled_inc) {
    const double late = delta[last] - delta[mid];
    const double prev = delta[mid] - delta[early];
    return scaled_inc > 4.0 * thresholds.tail && late >= prev;
  };

  if (out.scaled_increment_A < thresholds.tail && out.scaled_increment_D < thresholds.tail) {
    out.verdict = Verdict::bounded;
  } else if (growing(out.delta_A, out.scaled_increment_A) || growing(out.delta_D, out.scaled_increment_D)) {
    out.verdict = Verdict::unbounded;
  } else {
    out.verdict = Verdict::inconclusive;
  }
  return out;
}

ProxyResult class_h_proxy_check(const SumGrid& sums, const Thresholds& thresholds) {
  ProxyResult out;
  out.grid = grid_of(sums);
  require_three_decades(out.grid);
  std::vector<double> valid;
  for (const auto& row : sums.rows) {
    const double lnln = std::log(std::log(static_cast<double>(row.n)));
    if (!(row.D_star > 1.0) || !(lnln > 0.0)) {
      out.series.push_back(std::numeric_limits<double>::quiet_NaN());
      out.skipped.push_back(row.n);
      continue;
    }
    const double r = std::log(row.D_star) / lnln;
    out.series.push_back(r);
    valid.push_back(r);
  }
  if (valid.size() < 3) return out;
  const double a = valid[valid.size() - 3];
  const double b = valid[valid.size() - 2];
  const double c = valid.back();
  if (a > b && b > c && c < thresholds.h_satisfied) {
    out.verdict = ProxyVerdict::proxy_satisfied;
  } else if (std::min({a, b, c}) > thresholds.h_violated) {
    out.verdict = ProxyVerdict::proxy_violated;
  }
  return out;
}

GrowthResult growth_verdict(std::span<const std::uint64_t> grid, std::span<const double> series,
                            const Thresholds& thresholds) {
  if (grid.empty() || grid.size() != series.size()) {
    throw PreconditionError("growth series must match the grid");
  }
  GrowthResult out{Verdict::inconclusive, {grid.begin(), grid.end()}, {series.begin(), series.end()}};
  const auto [last, mid, early] = two_decade_windows(grid);
  const auto ratio = [&](std::size_t hi, std::size_t lo) {
    if (series[lo] == 0.0) return series[hi] == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return series[hi] / series[lo];
  };
  const double late = ratio(last, mid);
  const double prev = ratio(mid, early);
  if (late <= 1.0 + thresholds.growth_plateau) {
    out.verdict = Verdict::bounded;
  } else if (late > 1.0 + 4.0 * thresholds.growth_plateau && prev > 1.0 + thresholds.growth_plateau) {
    out.verdict = Verdict::unbounded;
  }
  return out;
}

ClassSResult class_s_check(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                           const Thresholds& thresholds, const SieveOptions& options) {
  require_three_decades(grid);
  return class_s_check(moment_sums(spec, grid, options), thresholds);
}

ProxyResult class_h_proxy_check(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                                const Thresholds& thresholds, const SieveOptions& options) {
  require_three_decades(grid);
  return class_h_proxy_check(moment_sums(spec, grid, options), thresholds);
}

GrowthResult growth_check(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                          const Thresholds& thresholds, const SieveOptions& options) {
  check_grid(grid, 2);
  if (grid.back() < 10) throw PreconditionError("growth_check needs n_max >= 10");
  std::vector<double> series;
  series.reserve(grid.size());
  double running = 0.0;
  std::size_t next = 0;
  stream_values(spec, grid.back(), grid, options, [&](std::uint64_t lo, std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::uint64_t m = lo + i;
      if (m < 2) continue;
      running = std::max(running, std::abs(values[i]) / std::log(static_cast<double>(m)));
    }
    const std::uint64_t hi = lo + values.size() - 1;
    while (next < grid.size() && grid[next] == hi) {
      series.push_back(running);
      ++next;
    }
  });
  return growth_verdict(grid, series, thresholds);
}

ClassReport classify(const AdditiveFunctionSpec& spec, std::span<const std::uint64_t> grid,
                     const Thresholds& thresholds, const SieveOptions& options, bool with_growth) {
  require_three_decades(grid);
  const SumGrid sums = moment_sums(spec, grid, options);
  ClassReport report;
  report.function = spec.name();
  report.grid.assign(grid.begin(), grid.end());
  report.s = class_s_check(sums, thresholds);
  report.h = class_h_proxy_check(sums, thresholds);
  if (with_growth) {
    report.growth = growth_check(spec, grid, thresholds, options);
    report.growth_computed = true;
  }
  report.thresholds = thresholds;
  return report;
}

}  // namespace addfn
