#pragma once
// Reduction of recurrences modulo a prime: companion-matrix order, minimal
// period of the reduced sequence, Legendre symbol and q-th power residues.

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "powsieve/recurrence.hpp"

namespace powsieve {

/// Raised when a modulus divides B, where reduction is undefined.
class PrimeDividesB : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Which group-order bound the companion matrix order divides.
enum class BoundCase {
  Degenerate,  // l(l-1): repeated eigenvalue mod l
  Split,       // l-1
  Inert,       // l^2-1
};

std::string_view to_string(BoundCase c);
BoundCase parseBoundCase(std::string_view s);
std::uint64_t boundValue(BoundCase c, std::uint64_t prime);

/// The (u, v)-independent part of the period data; depends only on (A, B, l).
struct OrderRecord {
  std::uint64_t prime = 0;
  std::uint64_t ordM = 0;
  BoundCase boundCase = BoundCase::Split;
  int legendreDelta = 0;     // (Delta / l); Kronecker symbol at l = 2
  bool deltaSquare = false;  // Delta is a non-zero rational square

  friend bool operator==(const OrderRecord&, const OrderRecord&) = default;
};

struct PeriodRecord {
  std::uint64_t prime = 0;
  std::uint64_t piEll = 0;  // minimal period of the reduced extended sequence
  std::uint64_t ordM = 0;   // order of [[A,B],[1,0]] in GL_2(F_l)
  BoundCase boundCase = BoundCase::Split;
  int legendreDelta = 0;
  bool deltaSquare = false;

  friend bool operator==(const PeriodRecord&, const PeriodRecord&) = default;
};

/// 2x2 matrix over F_l, row major.
struct Mat2 {
  std::uint64_t a, b, c, d;
  friend bool operator==(const Mat2&, const Mat2&) = default;
};

Mat2 companion(const RecurrenceSpec& spec, std::uint64_t prime);
Mat2 mul(const Mat2& x, const Mat2& y, std::uint64_t m);
Mat2 pow(Mat2 x, std::uint64_t e, std::uint64_t m);
inline bool isIdentity(const Mat2& x) { return x.a == 1 && x.b == 0 && x.c == 0 && x.d == 1; }

/// Legendre symbol (a / l) for an odd prime l; throws std::invalid_argument otherwise.
int legendre(std::int64_t a, std::uint64_t prime);
int legendre(const BigInt& a, std::uint64_t prime);

/// Which divisor bound on the period applies to (spec, l).
BoundCase boundCase(const RecurrenceSpec& spec, std::uint64_t prime);

OrderRecord orderRecord(const RecurrenceSpec& spec, std::uint64_t prime);
std::uint64_t matrixOrder(const RecurrenceSpec& spec, std::uint64_t prime);

PeriodRecord minimalPeriod(const RecurrenceSpec& spec, std::uint64_t prime);
/// Same, reusing the order data already computed for (A, B, l).
PeriodRecord minimalPeriod(const RecurrenceSpec& spec, const OrderRecord& order);

/// x == 0 or x^((l-1)/q) == 1 mod l. Every residue qualifies when l != 1 mod q.
bool qthPowerResidue(std::uint64_t x, std::uint64_t prime, std::uint64_t q);

/// G_0 .. G_{length-1} mod l.
std::vector<std::uint32_t> reducedTermTable(const RecurrenceSpec& spec, std::uint64_t prime,
                                            std::size_t length);

/// G_n mod l for a single (possibly huge) index via matrix powering.
std::uint64_t reducedTerm(const RecurrenceSpec& spec, std::uint64_t prime, std::uint64_t n);

}  // namespace powsieve
