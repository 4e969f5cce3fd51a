#pragma once
// Exact integer binary recurrences G_{n+2} = A*G_{n+1} + B*G_n, including the
// continuation to negative indices with values in Z[1/B].

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace powsieve {

using BigInt = boost::multiprecision::cpp_int;

struct RecurrenceSpec {
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::int64_t u = 0;  // G_0
  std::int64_t v = 0;  // G_1

  /// Throws std::invalid_argument unless A*B != 0.
  void validate() const;
  /// (u, v) == (0, 0).
  bool trivial() const { return u == 0 && v == 0; }

  friend bool operator==(const RecurrenceSpec&, const RecurrenceSpec&) = default;
};

std::string to_string(const RecurrenceSpec& spec);

/// Raised by operations that need two sequences with identical (A, B).
class MismatchedCoefficients : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A value numerator / B^bPower of the extended sequence. Kept reduced:
/// bPower == 0, or B does not divide numerator.
class ExtendedTerm {
 public:
  ExtendedTerm() = default;
  ExtendedTerm(BigInt numerator, unsigned bPower, std::int64_t B);

  const BigInt& numerator() const { return numerator_; }
  unsigned bPower() const { return bPower_; }
  bool isInteger() const { return bPower_ == 0; }

  /// Exact sum; both terms must share the same B.
  ExtendedTerm plus(const ExtendedTerm& other) const;
  ExtendedTerm times(std::int64_t factor) const;

  friend bool operator==(const ExtendedTerm& a, const ExtendedTerm& b) {
    return a.bPower_ == b.bPower_ && a.numerator_ == b.numerator_;
  }

 private:
  void reduce();

  BigInt numerator_ = 0;
  unsigned bPower_ = 0;
  std::int64_t B_ = 1;
};

std::string to_string(const ExtendedTerm& t);

/// A^2 + 4B.
BigInt discriminant(const RecurrenceSpec& spec);

/// G_n for any integer n. Forward terms are exact integers.
ExtendedTerm term(const RecurrenceSpec& spec, std::int64_t n);

/// Terms G_first .. G_last inclusive, computed in one sweep.
std::vector<ExtendedTerm> terms(const RecurrenceSpec& spec, std::int64_t first, std::int64_t last);

/// G_0 .. G_count-1 as integers.
std::vector<BigInt> forwardTerms(const RecurrenceSpec& spec, std::size_t count);

/// Hypotheses of the classical finiteness theorem for G_n = k x^q, each
/// reported separately. Informational only.
struct PethoReport {
  bool coprimeCoefficients = false;   // gcd(A, B) == 1
  bool nonZeroInitial = false;        // (G_0, G_1) != (0, 0)
  bool discriminantCondition = false; // A^2 != -jB for j in 1..4
  bool nonDegenerateForm = false;     // G_1^2 - A G_0 G_1 - B G_0^2 != 0

  bool allHold() const {
    return coprimeCoefficients && nonZeroInitial && discriminantCondition && nonDegenerateForm;
  }
};

PethoReport pethoConditions(const RecurrenceSpec& spec);

/// True iff the sequence has the form g * mu^n, i.e. v^2 == A u v + B u^2.
bool isPurePowerForm(const RecurrenceSpec& spec);

/// Offset h with G'_n = G_{n+h} (G from `a`, G' from `b`) and |h| <= searchRadius.
/// Smallest |h| wins, positive before negative. Sequences of pure-power form are
/// compared through g' = g * mu^h when mu is a rational integer; other pure-power
/// comparisons throw std::domain_error.
std::optional<std::int64_t> shiftEquivalent(const RecurrenceSpec& a, const RecurrenceSpec& b,
                                            std::int64_t searchRadius);

}  // namespace powsieve
