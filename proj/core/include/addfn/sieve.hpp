#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "addfn/errors.hpp"

namespace addfn {

/// Budget and segmentation knobs shared by every sieve-backed computation.
struct SieveOptions {
  /// Integers per window. Bounds peak memory independently of n.
  std::uint64_t segment_size = std::uint64_t{1} << 22;
  /// Largest n any operation may touch; above it a ResourceError is thrown.
  std::uint64_t max_n = 100'000'000;
  /// Threads used by window-parallel passes. Output never depends on it.
  unsigned workers = 1;
};

struct PrimePower {
  std::uint64_t p = 0;
  unsigned alpha = 0;
  std::uint64_t value = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// p^alpha, throwing ResourceError if the value does not fit in 64 bits.
PrimePower make_prime_power(std::uint64_t p, unsigned alpha);

/// Largest r with r^k <= n. Exact integer arithmetic; k >= 1.
std::uint64_t iroot(std::uint64_t n, unsigned k);

/// Largest k with 2^k <= n (n >= 1).
unsigned max_exponent(std::uint64_t n);

struct PrimeFactor {
  std::uint64_t p = 0;
  unsigned alpha = 0;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// m = prod p^alpha with p strictly increasing; empty iff m == 1.
struct Factorization {
  std::uint64_t m = 1;
  std::vector<PrimeFactor> factors;
};

/// Reference factorization by trial division. Slow; meant for small m and tests.
Factorization factorize_trial(std::uint64_t m);

/// All primes <= limit, ascending. Copies share the underlying storage.
class PrimeTable {
 public:
  PrimeTable() = default;
  PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes);

  [[nodiscard]] std::uint64_t limit() const { return limit_; }
  [[nodiscard]] std::span<const std::uint64_t> primes() const;
  [[nodiscard]] std::size_t size() const { return primes().size(); }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] std::uint64_t operator[](std::size_t i) const { return primes()[i]; }

  /// pi(x) for x <= limit().
  [[nodiscard]] std::size_t count_up_to(std::uint64_t x) const;
  [[nodiscard]] bool contains(std::uint64_t x) const;

 private:
  std::uint64_t limit_ = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> primes_;
};

PrimeTable build_primes(std::uint64_t limit, const SieveOptions& options = {});

/// Every p^alpha <= n, grouped by alpha, ascending p within each group.
std::vector<PrimePower> prime_powers_up_to(std::uint64_t n, const SieveOptions& options = {});

/// Smallest-prime-factor data for a window [lo, hi].
class SpfSegment {
 public:
  SpfSegment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint32_t> spf, PrimeTable aux);

  [[nodiscard]] std::uint64_t lo() const { return lo_; }
  [[nodiscard]] std::uint64_t hi() const { return hi_; }
  [[nodiscard]] std::uint64_t spf(std::uint64_t m) const;
  [[nodiscard]] Factorization factorization(std::uint64_t m) const;

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  // 0 marks an entry with no prime factor <= sqrt(hi), i.e. m itself is prime.
  std::vector<std::uint32_t> spf_;
  PrimeTable aux_;
};

/// Requires 2 <= lo <= hi and aux.limit() >= isqrt(hi).
SpfSegment factorize_window(std::uint64_t lo, std::uint64_t hi, const PrimeTable& aux);

namespace detail {
void check_window(std::uint64_t lo, std::uint64_t hi, const PrimeTable& aux);
std::vector<std::uint64_t> simple_sieve(std::uint64_t limit);
}  // namespace detail

/// Calls visit(p) for each prime in [lo, hi] in ascending order, sieving one
/// window of options.segment_size integers at a time.
template <class Visit>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options, Visit&& visit) {
  if (hi < 2 || lo > hi) return;
  if (hi > options.max_n) {
    throw ResourceError("prime range exceeds sieve budget");
  }
  lo = lo < 2 ? 2 : lo;
  const auto base = detail::simple_sieve(iroot(hi, 2));
  const std::uint64_t seg = options.segment_size == 0 ? 1 : options.segment_size;
  std::vector<char> composite;
  for (std::uint64_t start = lo; start <= hi;) {
    const std::uint64_t end = (hi - start < seg) ? hi : start + seg - 1;
    composite.assign(end - start + 1, 0);
    for (const std::uint64_t p : base) {
      if (p * p > end) break;
      std::uint64_t first = ((start + p - 1) / p) * p;
      if (first < p * p) first = p * p;
      for (std::uint64_t j = first; j <= end; j += p) composite[j - start] = 1;
    }
    for (std::uint64_t m = start; m <= end; ++m) {
      if (!composite[m - start]) visit(m);
    }
    if (end == hi) break;
    start = end + 1;
  }
}

/// Visits every exact prime-power divisor of every m in [lo, hi]:
/// visit(m - lo, p, alpha) with p ascending for each fixed m. `cofactor` is
/// scratch storage reused across calls.
template <class Visit>
void for_each_exact_prime_power(std::uint64_t lo, std::uint64_t hi, const PrimeTable& aux,
                                std::vector<std::uint64_t>& cofactor, Visit&& visit) {
  detail::check_window(lo, hi, aux);
  const std::uint64_t len = hi - lo + 1;
  cofactor.resize(len);
  for (std::uint64_t i = 0; i < len; ++i) cofactor[i] = lo + i;
  for (const std::uint64_t p : aux.primes()) {
    if (p * p > hi) break;
    for (std::uint64_t j = ((lo + p - 1) / p) * p; j <= hi; j += p) {
      std::uint64_t& rest = cofactor[j - lo];
      unsigned alpha = 0;
      do {
        rest /= p;
        ++alpha;
      } while (rest % p == 0);
      visit(j - lo, p, alpha);
    }
  }
  for (std::uint64_t i = 0; i < len; ++i) {
    if (cofactor[i] > 1) visit(i, cofactor[i], 1U);
  }
}

}  // namespace addfn
