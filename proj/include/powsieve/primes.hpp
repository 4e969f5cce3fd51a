#pragma once
// Small-prime utilities: sieve of Eratosthenes, deterministic primality for
// 64-bit values, trial-division factorization.

#include <cstdint>
#include <utility>
#include <vector>

namespace powsieve {

/// Primes p with 2 <= p <= bound, ascending.
std::vector<std::uint64_t> primesUpTo(std::uint64_t bound);

/// Deterministic Miller-Rabin over the first twelve prime bases.
bool isPrime(std::uint64_t n);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Factorization of n >= 1 by trial division, primes ascending.
std::vector<PrimePower> factorize(std::uint64_t n);

/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Largest prime factor of n (1 for n == 1).
std::uint64_t largestPrimeFactor(std::uint64_t n);

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Inverse of a modulo m; requires gcd(a, m) == 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);

/// Non-negative residue of a signed value.
inline std::uint64_t reduce(std::int64_t a, std::uint64_t m) {
  const auto r = static_cast<std::int64_t>(static_cast<__int128>(a) % static_cast<__int128>(m));
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

/// lcm(a, b); throws std::overflow_error past 2^64 - 1.
std::uint64_t checkedLcm(std::uint64_t a, std::uint64_t b);

}  // namespace powsieve
