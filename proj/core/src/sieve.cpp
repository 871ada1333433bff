#include "addfn/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace addfn {

namespace {

// a^k, or nullopt-like sentinel false on overflow.
bool checked_pow(std::uint64_t a, unsigned k, std::uint64_t& out) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (a != 0 && r > std::numeric_limits<std::uint64_t>::max() / a) return false;
    r *= a;
  }
  out = r;
  return true;
}

bool pow_le(std::uint64_t a, unsigned k, std::uint64_t n) {
  std::uint64_t v = 0;
  return checked_pow(a, k, v) && v <= n;
}

}  // namespace

PrimePower make_prime_power(std::uint64_t p, unsigned alpha) {
  if (alpha == 0) throw DomainError("prime power exponent must be >= 1");
  std::uint64_t value = 0;
  if (!checked_pow(p, alpha, value)) {
    throw ResourceError("prime power " + std::to_string(p) + "^" + std::to_string(alpha) +
                        " overflows 64 bits");
  }
  return {p, alpha, value};
}

std::uint64_t iroot(std::uint64_t n, unsigned k) {
  if (k == 0) throw DomainError("iroot: k must be >= 1");
  if (k == 1 || n < 2) return n;
  // Floating estimate, then exact correction in both directions.
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && !pow_le(r, k, n)) --r;
  while (pow_le(r + 1, k, n)) ++r;
  return r;
}

unsigned max_exponent(std::uint64_t n) {
  if (n == 0) throw DomainError("max_exponent: n must be >= 1");
  unsigned k = 0;
  while (n > 1) {
    n >>= 1;
    ++k;
  }
  return k;
}

Factorization factorize_trial(std::uint64_t m) {
  if (m == 0) throw DomainError("cannot factorize 0");
  Factorization out{m, {}};
  for (std::uint64_t p = 2; p <= m / p; ++p) {
    if (m % p != 0) continue;
    unsigned alpha = 0;
    while (m % p == 0) {
      m /= p;
      ++alpha;
    }
    out.factors.push_back({p, alpha});
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

PrimeTable::PrimeTable(std::uint64_t limit, std::vector<std::uint64_t> primes)
    : limit_(limit), primes_(std::make_shared<const std::vector<std::uint64_t>>(std::move(primes))) {}

std::span<const std::uint64_t> PrimeTable::primes() const {
  if (!primes_) return {};
  return {primes_->data(), primes_->size()};
}

std::size_t PrimeTable::count_up_to(std::uint64_t x) const {
  const auto ps = primes();
  return static_cast<std::size_t>(std::upper_bound(ps.begin(), ps.end(), x) - ps.begin());
}

bool PrimeTable::contains(std::uint64_t x) const {
  const auto ps = primes();
  return std::binary_search(ps.begin(), ps.end(), x);
}

namespace detail {

std::vector<std::uint64_t> simple_sieve(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

void check_window(std::uint64_t lo, std::uint64_t hi, const PrimeTable& aux) {
  if (lo < 2 || lo > hi) {
    throw PreconditionError("window must satisfy 2 <= lo <= hi");
  }
  if (aux.limit() < iroot(hi, 2)) {
    throw PreconditionError("aux prime table does not cover sqrt(hi)");
  }
}

}  // namespace detail

PrimeTable build_primes(std::uint64_t limit, const SieveOptions& options) {
  if (limit < 2) throw DomainError("build_primes: limit must be >= 2");
  if (limit > options.max_n) {
    throw ResourceError("build_primes: limit " + std::to_string(limit) + " exceeds budget " +
                        std::to_string(options.max_n));
  }
  std::vector<std::uint64_t> primes;
  // Rough pi(x) upper bound to avoid repeated reallocation.
  const double x = static_cast<double>(limit);
  primes.reserve(static_cast<std::size_t>(1.26 * x / std::log(x)) + 8);
  for_each_prime(2, limit, options, [&](std::uint64_t p) { primes.push_back(p); });
  return PrimeTable(limit, std::move(primes));
}

std::vector<PrimePower> prime_powers_up_to(std::uint64_t n, const SieveOptions& options) {
  if (n < 2) throw DomainError("prime_powers_up_to: n must be >= 2");
  const PrimeTable table = build_primes(n, options);
  std::vector<PrimePower> out;
  out.reserve(table.size() + 2 * iroot(n, 2));
  const unsigned top = max_exponent(n);
  for (unsigned alpha = 1; alpha <= top; ++alpha) {
    const std::uint64_t bound = iroot(n, alpha);
    for (const std::uint64_t p : table.primes()) {
      if (p > bound) break;
      out.push_back(make_prime_power(p, alpha));
    }
  }
  return out;
}

SpfSegment::SpfSegment(std::uint64_t lo, std::uint64_t hi, std::vector<std::uint32_t> spf,
                       PrimeTable aux)
    : lo_(lo), hi_(hi), spf_(std::move(spf)), aux_(std::move(aux)) {}

std::uint64_t SpfSegment::spf(std::uint64_t m) const {
  if (m < lo_ || m > hi_) throw PreconditionError("spf: m outside window");
  const std::uint32_t s = spf_[m - lo_];
  return s == 0 ? m : s;
}

Factorization SpfSegment::factorization(std::uint64_t m) const {
  Factorization out{m, {}};
  std::uint64_t rest = m;
  std::uint64_t last = 0;
  while (rest > 1) {
    std::uint64_t p = 0;
    if (rest >= lo_ && rest <= hi_) {
      p = spf(rest);
    } else {
      // Cofactor left the window: continue with the aux primes above the last factor.
      const auto ps = aux_.primes();
      auto it = std::upper_bound(ps.begin(), ps.end(), last);
      for (; it != ps.end() && *it <= rest / *it; ++it) {
        if (rest % *it == 0) {
          p = *it;
          break;
        }
      }
      if (p == 0) p = rest;
    }
    unsigned alpha = 0;
    while (rest % p == 0) {
      rest /= p;
      ++alpha;
    }
    out.factors.push_back({p, alpha});
    last = p;
  }
  return out;
}

SpfSegment factorize_window(std::uint64_t lo, std::uint64_t hi, const PrimeTable& aux) {
  detail::check_window(lo, hi, aux);
  std::vector<std::uint32_t> spf(hi - lo + 1, 0);
  for (const std::uint64_t p : aux.primes()) {
    if (p * p > hi) break;
    for (std::uint64_t j = ((lo + p - 1) / p) * p; j <= hi; j += p) {
      if (j == p) continue;  // p itself stays marked prime
      auto& slot = spf[j - lo];
      if (slot == 0) slot = static_cast<std::uint32_t>(p);
    }
  }
  return SpfSegment(lo, hi, std::move(spf), aux);
}

}  // namespace addfn
