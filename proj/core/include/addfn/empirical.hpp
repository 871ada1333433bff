#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "addfn/functions.hpp"
#include "addfn/sieve.hpp"

namespace addfn {

/// Population moments of f(m) over m in {1..n} under the uniform measure.
struct EmpiricalMoments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // divides by n
  std::uint64_t count = 0;
};

/// Streams f(m) for m = 1..n in ascending windows. Windows never straddle a
/// cut point (each cut c ends a window at m = c), so callers can snapshot
/// running statistics at grid points. Window contents depend only on n, the
/// cuts and options.segment_size; options.workers only changes who computes them.
void stream_values(const AdditiveFunctionSpec& spec, std::uint64_t n, std::span<const std::uint64_t> cuts,
                   const SieveOptions& options,
                   const std::function<void(std::uint64_t lo, std::span<const double> values)>& visit);

EmpiricalMoments empirical_moments(const AdditiveFunctionSpec& spec, std::uint64_t n,
                                   const SieveOptions& options = {});

/// One factorization pass up to grid.back(), snapshotting at each grid point.
std::vector<EmpiricalMoments> empirical_moments_grid(const AdditiveFunctionSpec& spec,
                                                     std::span<const std::uint64_t> grid,
                                                     const SieveOptions& options = {});

/// (1/n) sum_{p^a <= n} (f(p^a) - f(p^(a-1))) floor(n / p^a). Never factorizes.
double mean_via_counts(const AdditiveFunctionSpec& spec, std::uint64_t n, const SieveOptions& options = {});

enum class Centering { theoretical, empirical };

struct HistogramOptions {
  unsigned bins = 41;
  double lo = -4.0;
  double hi = 4.0;
  Centering centering = Centering::theoretical;
};

/// Distribution of (f(m) - center) / scale over m <= n. Values outside
/// [lo, hi) are folded into the first/last bin.
struct NormalizedHistogram {
  std::uint64_t n = 0;
  Centering centering = Centering::theoretical;
  double center = 0.0;
  double scale = 0.0;
  std::vector<double> bin_edges;  // bins + 1 entries
  std::vector<double> masses;     // bins entries, sum to 1
};

/// Theoretical centering uses A(n) and sqrt(D(n)); empirical uses the
/// population mean and standard deviation. Throws DomainError on zero variance.
NormalizedHistogram normalized_histogram(const AdditiveFunctionSpec& spec, std::uint64_t n,
                                         const HistogramOptions& histogram = {},
                                         const SieveOptions& options = {});

}  // namespace addfn
