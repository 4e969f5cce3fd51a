#include "powsieve/modular.hpp"

#include <string>

#include "powsieve/primes.hpp"

namespace powsieve {

std::string_view to_string(BoundCase c) {
  switch (c) {
    case BoundCase::Degenerate: return "l(l-1)";
    case BoundCase::Split: return "l-1";
    case BoundCase::Inert: return "l^2-1";
  }
  return "?";
}

BoundCase parseBoundCase(std::string_view s) {
  if (s == "l(l-1)") return BoundCase::Degenerate;
  if (s == "l-1") return BoundCase::Split;
  if (s == "l^2-1") return BoundCase::Inert;
  throw std::invalid_argument("unknown bound case: " + std::string(s));
}

std::uint64_t boundValue(BoundCase c, std::uint64_t prime) {
  switch (c) {
    case BoundCase::Degenerate: return prime * (prime - 1);
    case BoundCase::Split: return prime - 1;
    case BoundCase::Inert: return prime * prime - 1;
  }
  return 0;
}

namespace {

void requirePrime(std::uint64_t prime) {
  if (!isPrime(prime)) throw std::invalid_argument("modulus is not prime: " + std::to_string(prime));
  if (prime > (1ULL << 32)) throw std::invalid_argument("modulus exceeds 2^32: " + std::to_string(prime));
}

void requireCoprimeToB(const RecurrenceSpec& spec, std::uint64_t prime) {
  spec.validate();
  requirePrime(prime);
  if (reduce(spec.B, prime) == 0)
    throw PrimeDividesB(std::to_string(prime) + " divides B in " + to_string(spec));
}

std::uint64_t reduceBig(const BigInt& a, std::uint64_t prime) {
  BigInt r = a % prime;
  if (r < 0) r += prime;
  return static_cast<std::uint64_t>(r);
}

bool isNonZeroSquare(const BigInt& n) {
  if (n <= 0) return false;
  const BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

// Jacobi symbol by binary reciprocity; n odd and positive.
int jacobi(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int sign = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

}  // namespace

Mat2 companion(const RecurrenceSpec& spec, std::uint64_t prime) {
  return {reduce(spec.A, prime), reduce(spec.B, prime), 1 % prime, 0};
}

Mat2 mul(const Mat2& x, const Mat2& y, std::uint64_t m) {
  auto dot = [m](std::uint64_t p, std::uint64_t q, std::uint64_t r, std::uint64_t s) {
    return (mulmod(p, q, m) + mulmod(r, s, m)) % m;
  };
  return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c),
          dot(x.c, y.b, x.d, y.d)};
}

Mat2 pow(Mat2 x, std::uint64_t e, std::uint64_t m) {
  Mat2 r{1 % m, 0, 0, 1 % m};
  while (e) {
    if (e & 1) r = mul(r, x, m);
    x = mul(x, x, m);
    e >>= 1;
  }
  return r;
}

int legendre(std::int64_t a, std::uint64_t prime) {
  if (prime == 2 || !isPrime(prime))
    throw std::invalid_argument("legendre: modulus must be an odd prime, got " + std::to_string(prime));
  return jacobi(reduce(a, prime), prime);
}

int legendre(const BigInt& a, std::uint64_t prime) {
  if (prime == 2 || !isPrime(prime))
    throw std::invalid_argument("legendre: modulus must be an odd prime, got " + std::to_string(prime));
  return jacobi(reduceBig(a, prime), prime);
}

namespace {

// (Delta / l) on odd primes, Kronecker's extension at 2.
int residueClass(const BigInt& delta, std::uint64_t prime) {
  if (prime != 2) return legendre(delta, prime);
  const std::uint64_t r = reduceBig(delta, 8);
  if (r % 2 == 0) return 0;
  return (r == 1 || r == 7) ? 1 : -1;
}

}  // namespace

BoundCase boundCase(const RecurrenceSpec& spec, std::uint64_t prime) {
  const BigInt delta = discriminant(spec);
  // l | Delta means a double eigenvalue mod l whether or not Delta is a
  // square, so the l(l-1) bound applies in both situations.
  if (delta == 0 || reduceBig(delta, prime) == 0) return BoundCase::Degenerate;
  if (isNonZeroSquare(delta)) return BoundCase::Split;
  return residueClass(delta, prime) == 1 ? BoundCase::Split : BoundCase::Inert;
}

OrderRecord orderRecord(const RecurrenceSpec& spec, std::uint64_t prime) {
  requireCoprimeToB(spec, prime);
  OrderRecord rec;
  rec.prime = prime;
  rec.boundCase = boundCase(spec, prime);
  const BigInt delta = discriminant(spec);
  rec.deltaSquare = isNonZeroSquare(delta);
  rec.legendreDelta = residueClass(delta, prime);

  const Mat2 m = companion(spec, prime);
  std::uint64_t order = boundValue(rec.boundCase, prime);
  if (!isIdentity(pow(m, order, prime)))
    throw std::logic_error("companion matrix order does not divide its bound for " + to_string(spec) +
                           " mod " + std::to_string(prime));
  for (const auto& [p, e] : factorize(order)) {
    for (unsigned i = 0; i < e && isIdentity(pow(m, order / p, prime)); ++i) order /= p;
  }
  rec.ordM = order;
  return rec;
}

std::uint64_t matrixOrder(const RecurrenceSpec& spec, std::uint64_t prime) {
  return orderRecord(spec, prime).ordM;
}

PeriodRecord minimalPeriod(const RecurrenceSpec& spec, const OrderRecord& order) {
  const std::uint64_t prime = order.prime;
  requireCoprimeToB(spec, prime);
  PeriodRecord rec{prime, 0, order.ordM, order.boundCase, order.legendreDelta, order.deltaSquare};
  const std::uint64_t g1 = reduce(spec.v, prime), g0 = reduce(spec.u, prime);
  if (g0 == 0 && g1 == 0) {
    rec.piEll = 1;
    return rec;
  }
  const Mat2 m = companion(spec, prime);
  // Valid shifts form a subgroup of Z containing ordM; its generator is the
  // least divisor of ordM that fixes the state vector.
  for (std::uint64_t d : divisors(order.ordM)) {
    const Mat2 p = pow(m, d, prime);
    const std::uint64_t x = (mulmod(p.a, g1, prime) + mulmod(p.b, g0, prime)) % prime;
    const std::uint64_t y = (mulmod(p.c, g1, prime) + mulmod(p.d, g0, prime)) % prime;
    if (x == g1 && y == g0) {
      rec.piEll = d;
      return rec;
    }
  }
  throw std::logic_error("no period divides the matrix order");
}

PeriodRecord minimalPeriod(const RecurrenceSpec& spec, std::uint64_t prime) {
  return minimalPeriod(spec, orderRecord(spec, prime));
}

bool qthPowerResidue(std::uint64_t x, std::uint64_t prime, std::uint64_t q) {
  x %= prime;
  if (x == 0) return true;
  if ((prime - 1) % q != 0) return true;
  return powmod(x, (prime - 1) / q, prime) == 1;
}

std::vector<std::uint32_t> reducedTermTable(const RecurrenceSpec& spec, std::uint64_t prime,
                                            std::size_t length) {
  requireCoprimeToB(spec, prime);
  std::vector<std::uint32_t> out(length);
  const std::uint64_t a = reduce(spec.A, prime), b = reduce(spec.B, prime);
  std::uint64_t prev = reduce(spec.u, prime), cur = reduce(spec.v, prime);
  for (std::size_t i = 0; i < length; ++i) {
    out[i] = static_cast<std::uint32_t>(prev);
    const std::uint64_t next = (mulmod(a, cur, prime) + mulmod(b, prev, prime)) % prime;
    prev = cur;
    cur = next;
  }
  return out;
}

std::uint64_t reducedTerm(const RecurrenceSpec& spec, std::uint64_t prime, std::uint64_t n) {
  requireCoprimeToB(spec, prime);
  const Mat2 p = pow(companion(spec, prime), n, prime);
  // (G_{n+1}, G_n) = M^n (G_1, G_0)
  return (mulmod(p.c, reduce(spec.v, prime), prime) + mulmod(p.d, reduce(spec.u, prime), prime)) % prime;
}

}  // namespace powsieve
