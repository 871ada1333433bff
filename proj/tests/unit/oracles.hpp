#pragma once

// Brute-force references used only by tests. Nothing here calls into the
// sieve, so agreement with the library is evidence rather than tautology.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace addfn::testing {

inline bool is_prime_trial(std::uint64_t m) {
  if (m < 2) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> primes_trial(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 2; m <= limit; ++m) {
    if (is_prime_trial(m)) out.push_back(m);
  }
  return out;
}

/// (p, alpha) if m = p^alpha for a prime p and alpha >= 1.
inline std::optional<std::pair<std::uint64_t, unsigned>> as_prime_power(std::uint64_t m) {
  if (m < 2) return std::nullopt;
  std::uint64_t p = 2;
  while (m % p != 0) ++p;  // smallest divisor is prime
  unsigned alpha = 0;
  while (m % p == 0) {
    m /= p;
    ++alpha;
  }
  if (m != 1) return std::nullopt;
  return std::make_pair(p, alpha);
}

/// phi(m) by counting residues coprime to m.
inline std::uint64_t totient_count(std::uint64_t m) {
  std::uint64_t c = 0;
  for (std::uint64_t k = 1; k <= m; ++k) c += std::gcd(k, m) == 1 ? 1 : 0;
  return c;
}

/// phi(1..limit) by the classic multiplicative sieve phi[j] -= phi[j] / p.
inline std::vector<std::uint64_t> totient_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> phi(limit + 1);
  std::iota(phi.begin(), phi.end(), std::uint64_t{0});
  for (std::uint64_t p = 2; p <= limit; ++p) {
    if (phi[p] != p) continue;  // composite: already reduced by a smaller prime
    for (std::uint64_t j = p; j <= limit; j += p) phi[j] -= phi[j] / p;
  }
  return phi;
}

/// sum over m in [1, n] that are prime powers p^a of w(p, a, m).
template <class W>
double prime_power_sum_brute(std::uint64_t n, W w) {
  double total = 0.0;
  for (std::uint64_t m = 2; m <= n; ++m) {
    if (const auto pp = as_prime_power(m)) total += w(pp->first, pp->second, m);
  }
  return total;
}

/// Tiny deterministic generator for property-style sampling.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) { return lo + next() % (hi - lo + 1); }

 private:
  std::uint64_t state_;
};

inline bool close_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace addfn::testing
