#include "addfn/grid.hpp"

#include <algorithm>
#include <cmath>

#include "addfn/errors.hpp"

namespace addfn {

std::vector<std::uint64_t> geometric_grid(std::uint64_t lo, std::uint64_t hi, unsigned points) {
  if (lo == 0 || hi < lo) throw PreconditionError("geometric_grid: need 1 <= lo <= hi");
  if (points < 2 || lo == hi) return {hi};
  const double a = std::log10(static_cast<double>(lo));
  const double b = std::log10(static_cast<double>(hi));
  std::vector<std::uint64_t> grid;
  grid.reserve(points);
  for (unsigned i = 0; i < points; ++i) {
    std::uint64_t v = 0;
    if (i == 0) {
      v = lo;
    } else if (i + 1 == points) {
      v = hi;
    } else {
      const double e = a + (b - a) * static_cast<double>(i) / static_cast<double>(points - 1);
      v = static_cast<std::uint64_t>(std::llround(std::pow(10.0, e)));
      v = std::clamp(v, lo, hi);
    }
    if (grid.empty() || v > grid.back()) grid.push_back(v);
  }
  return grid;
}

std::size_t nearest_index(std::span<const std::uint64_t> grid, double target) {
  if (grid.empty()) throw PreconditionError("nearest_index: empty grid");
  const double lt = std::log(std::max(target, 1.0));
  std::size_t best = 0;
  double best_gap = std::abs(std::log(static_cast<double>(grid[0])) - lt);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double gap = std::abs(std::log(static_cast<double>(grid[i])) - lt);
    if (gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

void check_grid(std::span<const std::uint64_t> grid, std::uint64_t min_value) {
  if (grid.empty()) throw PreconditionError("grid is empty");
  if (grid.front() < min_value) throw PreconditionError("grid starts below minimum");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw PreconditionError("grid must be strictly ascending");
  }
}

}  // namespace addfn
