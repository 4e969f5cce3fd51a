#pragma once
// Deliberately naive reference computations used as ground truth by the unit
// and acceptance tests. Nothing here calls into the library's number theory.

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Big = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool isPrimeSlow(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t mod(std::int64_t a, std::uint64_t m) {
  const std::int64_t r = a % static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

// G_n as an exact rational, stepping from index 0 in either direction.
inline Rational termRational(std::int64_t A, std::int64_t B, std::int64_t u, std::int64_t v, std::int64_t n) {
  Rational lo = u, hi = v;  // (G_i, G_{i+1}) with i = 0
  if (n >= 0) {
    for (std::int64_t i = 0; i < n; ++i) {
      Rational next = Rational(A) * hi + Rational(B) * lo;
      lo = hi;
      hi = next;
    }
    return lo;
  }
  for (std::int64_t i = 0; i > n; --i) {
    Rational prev = (hi - Rational(A) * lo) / Rational(B);
    hi = lo;
    lo = prev;
  }
  return lo;
}

// Order of [[A,B],[1,0]] mod p by repeated multiplication.
inline std::uint64_t matrixOrderSlow(std::int64_t A, std::int64_t B, std::uint64_t p) {
  const std::uint64_t a = mod(A, p), b = mod(B, p);
  std::uint64_t m00 = a, m01 = b, m10 = 1 % p, m11 = 0;
  for (std::uint64_t k = 1; k <= p * p; ++k) {
    if (m00 == 1 % p && m01 == 0 && m10 == 0 && m11 == 1 % p) return k;
    const std::uint64_t n00 = (m00 * a + m01) % p, n01 = (m00 * b) % p;
    const std::uint64_t n10 = (m10 * a + m11) % p, n11 = (m10 * b) % p;
    m00 = n00, m01 = n01, m10 = n10, m11 = n11;
  }
  throw std::logic_error("matrixOrderSlow: no order found");
}

// Minimal period of the reduced sequence: first return of the initial pair.
inline std::uint64_t periodSlow(std::int64_t A, std::int64_t B, std::int64_t u, std::int64_t v, std::uint64_t p) {
  const std::uint64_t a = mod(A, p), b = mod(B, p), u0 = mod(u, p), v0 = mod(v, p);
  std::uint64_t x = u0, y = v0;
  for (std::uint64_t k = 1; k <= p * p; ++k) {
    const std::uint64_t z = (a * y + b * x) % p;
    x = y;
    y = z;
    if (x == u0 && y == v0) return k;
  }
  throw std::logic_error("periodSlow: no period found");
}

inline std::vector<std::uint64_t> reducedSlow(std::int64_t A, std::int64_t B, std::int64_t u, std::int64_t v,
                                              std::uint64_t p, std::size_t count) {
  std::vector<std::uint64_t> out;
  std::uint64_t x = mod(u, p), y = mod(v, p);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(x);
    const std::uint64_t z = (mod(A, p) * y + mod(B, p) * x) % p;
    x = y;
    y = z;
  }
  return out;
}

// {y^q mod p}, including 0.
inline std::set<std::uint64_t> powerSet(std::uint64_t p, std::uint64_t q) {
  std::set<std::uint64_t> s;
  for (std::uint64_t y = 0; y < p; ++y) {
    std::uint64_t r = 1 % p;
    for (std::uint64_t i = 0; i < q; ++i) r = r * y % p;
    s.insert(r);
  }
  return s;
}

inline int legendreSlow(std::int64_t a, std::uint64_t p) {
  const std::uint64_t r = mod(a, p);
  if (r == 0) return 0;
  for (std::uint64_t y = 1; y < p; ++y)
    if (y * y % p == r) return 1;
  return -1;
}

enum class Kind { Empty, Single, Fiber, Scattered };

struct Classified {
  Kind kind;
  std::int64_t rep;
  std::uint64_t count;
};

inline std::int64_t minAbs(std::uint64_t a, std::uint64_t m) {
  const auto s = static_cast<std::int64_t>(a), ms = static_cast<std::int64_t>(m);
  return 2 * s > ms ? s - ms : s;
}

// Tries every class a mod N/m and compares the generated fiber with J.
inline Classified classifySlow(std::uint64_t N, std::vector<std::uint64_t> J) {
  std::sort(J.begin(), J.end());
  const std::uint64_t m = J.size();
  if (m == 0) return {Kind::Empty, 0, 0};
  if (m == 1) return {Kind::Single, minAbs(J[0], N), 1};
  if (N % m == 0) {
    const std::uint64_t step = N / m;
    for (std::uint64_t a = 0; a < step; ++a) {
      std::vector<std::uint64_t> fiber;
      for (std::uint64_t j = 0; j < m; ++j) fiber.push_back(a + j * step);
      if (fiber == J) return {Kind::Fiber, minAbs(a, step), m};
    }
  }
  return {Kind::Scattered, 0, m};
}

// floor(y^(1/q)) by bisection.
inline Big rootSlow(const Big& y, unsigned q) {
  Big lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, q) <= y) hi *= 2;
  while (hi - lo > 1) {
    Big mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, q) <= y) lo = mid;
    else hi = mid;
  }
  return lo;
}

// Full-enumeration sieve: J = {n mod N : every prime's residue test passes},
// for explicit (prime, period) pairs with N = lcm of the periods.
inline std::vector<std::uint64_t> sieveSlow(std::int64_t A, std::int64_t B, std::int64_t u, std::int64_t v,
                                            std::int64_t k, std::uint64_t q,
                                            const std::vector<std::pair<std::uint64_t, std::uint64_t>>& primes,
                                            std::uint64_t N) {
  std::vector<std::vector<bool>> ok;
  for (auto [p, period] : primes) {
    const auto cubes = powerSet(p, q);
    std::uint64_t kinv = 0;
    for (std::uint64_t t = 1; t < p; ++t)
      if (t * mod(k, p) % p == 1) kinv = t;
    std::vector<bool> row;
    for (auto g : reducedSlow(A, B, u, v, p, period)) row.push_back(cubes.count(g * kinv % p) > 0);
    ok.push_back(row);
  }
  std::vector<std::uint64_t> J;
  for (std::uint64_t n = 0; n < N; ++n) {
    bool keep = true;
    for (std::size_t i = 0; i < primes.size() && keep; ++i) keep = ok[i][n % primes[i].second];
    if (keep) J.push_back(n);
  }
  return J;
}

}  // namespace oracle
