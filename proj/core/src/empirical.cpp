#include "addfn/empirical.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include <fmt/format.h>

#include "addfn/compensated.hpp"
#include "addfn/errors.hpp"
#include "addfn/grid.hpp"
#include "addfn/sums.hpp"

namespace addfn {

namespace {

struct Window {
  std::uint64_t lo;
  std::uint64_t hi;
};

std::vector<Window> plan_windows(std::uint64_t n, std::span<const std::uint64_t> cuts, std::uint64_t seg) {
  std::vector<Window> out;
  seg = std::max<std::uint64_t>(seg, 1);
  auto cut = cuts.begin();
  for (std::uint64_t start = 1; start <= n;) {
    while (cut != cuts.end() && *cut < start) ++cut;
    std::uint64_t end = (n - start < seg) ? n : start + seg - 1;
    if (cut != cuts.end() && *cut < end) end = *cut;
    out.push_back({start, end});
    if (end == n) break;
    start = end + 1;
  }
  return out;
}

struct WindowBuffer {
  std::vector<double> values;
  std::vector<std::uint64_t> scratch;
};

void fill_window(const AdditiveFunctionSpec& spec, const PrimeTable& aux, Window w, WindowBuffer& buf) {
  buf.values.assign(w.hi - w.lo + 1, 0.0);
  const std::uint64_t lo = std::max<std::uint64_t>(w.lo, 2);  // f(1) = 0
  if (lo > w.hi) return;
  const std::uint64_t shift = lo - w.lo;
  double* values = buf.values.data() + shift;
  for_each_exact_prime_power(lo, w.hi, aux, buf.scratch,
                             [&](std::uint64_t off, std::uint64_t p, unsigned alpha) {
                               values[off] += spec(p, alpha);
                             });
}

// Count, mean and sum of squared deviations; merged with Chan's pairwise update.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  static Moments of(std::span<const double> xs) {
    Moments out;
    out.count = xs.size();
    if (xs.empty()) return out;
    CompensatedSum sum;
    for (const double x : xs) sum += x;
    out.mean = sum.value() / static_cast<double>(xs.size());
    CompensatedSum sq;
    for (const double x : xs) sq += (x - out.mean) * (x - out.mean);
    out.m2 = sq.value();
    return out;
  }

  void merge(const Moments& other) {
    if (other.count == 0) return;
    if (count == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double total = na + nb;
    const double delta = other.mean - mean;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    count += other.count;
  }

  [[nodiscard]] EmpiricalMoments result() const {
    return {count, mean, count == 0 ? 0.0 : std::max(0.0, m2 / static_cast<double>(count)), count};
  }
};

}  // namespace

void stream_values(const AdditiveFunctionSpec& spec, std::uint64_t n, std::span<const std::uint64_t> cuts,
                   const SieveOptions& options,
                   const std::function<void(std::uint64_t lo, std::span<const double> values)>& visit) {
  if (n == 0) return;
  if (n > options.max_n) {
    throw ResourceError(fmt::format("n = {} exceeds sieve budget {}", n, options.max_n));
  }
  const PrimeTable aux = build_primes(std::max<std::uint64_t>(2, iroot(n, 2)), options);
  const auto windows = plan_windows(n, cuts, options.segment_size);
  const std::size_t workers = std::max<unsigned>(1, options.workers);
  std::vector<WindowBuffer> buffers(std::min(workers, windows.size()));

  for (std::size_t batch = 0; batch < windows.size(); batch += buffers.size()) {
    const std::size_t count = std::min(buffers.size(), windows.size() - batch);
    {
      std::vector<std::jthread> threads;
      for (std::size_t k = 1; k < count; ++k) {
        threads.emplace_back([&, k] { fill_window(spec, aux, windows[batch + k], buffers[k]); });
      }
      fill_window(spec, aux, windows[batch], buffers[0]);
    }
    for (std::size_t k = 0; k < count; ++k) visit(windows[batch + k].lo, buffers[k].values);
  }
}

std::vector<EmpiricalMoments> empirical_moments_grid(const AdditiveFunctionSpec& spec,
                                                     std::span<const std::uint64_t> grid,
                                                     const SieveOptions& options) {
  check_grid(grid, 1);
  std::vector<EmpiricalMoments> out;
  out.reserve(grid.size());
  Moments running;
  std::size_t next = 0;
  stream_values(spec, grid.back(), grid, options, [&](std::uint64_t lo, std::span<const double> values) {
    running.merge(Moments::of(values));
    const std::uint64_t hi = lo + values.size() - 1;
    while (next < grid.size() && grid[next] == hi) {
      out.push_back(running.result());
      ++next;
    }
  });
  return out;
}

EmpiricalMoments empirical_moments(const AdditiveFunctionSpec& spec, std::uint64_t n,
                                   const SieveOptions& options) {
  if (n == 0) throw DomainError("empirical_moments: n must be >= 1");
  const std::uint64_t grid[] = {n};
  return empirical_moments_grid(spec, grid, options).front();
}

double mean_via_counts(const AdditiveFunctionSpec& spec, std::uint64_t n, const SieveOptions& options) {
  if (n == 0) throw DomainError("mean_via_counts: n must be >= 1");
  CompensatedSum total;
  for_each_prime(2, n, options, [&](std::uint64_t p) {
    double previous = 0.0;  // f(p^0) = f(1) = 0
    std::uint64_t power = 1;
    for (unsigned alpha = 1; power <= n / p; ++alpha) {
      power *= p;
      const double current = spec(p, alpha);
      total += (current - previous) * static_cast<double>(n / power);
      previous = current;
    }
  });
  return total.value() / static_cast<double>(n);
}

NormalizedHistogram normalized_histogram(const AdditiveFunctionSpec& spec, std::uint64_t n,
                                         const HistogramOptions& histogram, const SieveOptions& options) {
  if (histogram.bins < 2) throw PreconditionError("histogram needs at least 2 bins");
  if (!(histogram.hi > histogram.lo)) throw PreconditionError("histogram range is empty");

  NormalizedHistogram out;
  out.n = n;
  out.centering = histogram.centering;
  double variance = 0.0;
  if (histogram.centering == Centering::theoretical) {
    if (n < 2) throw DomainError("theoretical centering needs n >= 2");
    const std::uint64_t grid[] = {n};
    const SumRow row = moment_sums(spec, grid, options).rows.front();
    out.center = row.A;
    variance = row.D;
  } else {
    const EmpiricalMoments m = empirical_moments(spec, n, options);
    out.center = m.mean;
    variance = m.variance;
  }
  if (!(variance > 0.0)) {
    throw DomainError(fmt::format("zero variance for '{}': cannot normalize", spec.name()));
  }
  out.scale = std::sqrt(variance);

  const unsigned bins = histogram.bins;
  const double width = (histogram.hi - histogram.lo) / bins;
  out.bin_edges.resize(bins + 1);
  for (unsigned i = 0; i <= bins; ++i) out.bin_edges[i] = histogram.lo + width * i;
  out.bin_edges[bins] = histogram.hi;

  std::vector<std::uint64_t> counts(bins, 0);
  stream_values(spec, n, {}, options, [&](std::uint64_t, std::span<const double> values) {
    for (const double v : values) {
      const double z = (v - out.center) / out.scale;
      const double pos = std::floor((z - histogram.lo) / width);
      const auto idx = static_cast<std::int64_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
      ++counts[static_cast<std::size_t>(idx)];
    }
  });
  out.masses.resize(bins);
  for (unsigned i = 0; i < bins; ++i) {
    out.masses[i] = static_cast<double>(counts[i]) / static_cast<double>(n);
  }
  return out;
}

}  // namespace addfn
