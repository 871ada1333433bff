#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace addfn {

/// Geometric grid of `points` integers from `lo` to `hi` inclusive, ascending
/// and de-duplicated. Exact powers of ten land exactly. The default grid is
/// geometric_grid(100, 1e8, 13): half-decade steps.
std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi, unsigned points);

/// Index of the grid point nearest to `target` in log-space.
std::size_t nearest_index(std::span<const std::uint64_t> grid, double target);

/// Throws PreconditionError unless the grid is non-empty, strictly ascending and starts at >= min_value.
void check_grid(std::span<const std::uint64_t> grid, std::uint64_t min_value = 2);

}  // namespace addfn
