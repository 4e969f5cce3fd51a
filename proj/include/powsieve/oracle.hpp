#pragma once
// Exhaustive search for G_n = k x^q over 0 <= n <= nMax, and the soundness
// check of a sieve outcome against it.

#include <cstdint>
#include <vector>

#include "powsieve/recurrence.hpp"
#include "powsieve/sieve.hpp"

namespace powsieve {

struct QthRoot {
  BigInt root;  // floor(y^(1/q))
  bool exact = false;
};

/// Requires y >= 0 and q >= 2; throws std::invalid_argument otherwise.
QthRoot integerQthRoot(const BigInt& y, unsigned q);

struct OracleHit {
  std::uint64_t n = 0;
  BigInt x;       // k * x^q == gValue
  BigInt gValue;
  bool trivial = false;  // |x| <= 1

  friend bool operator==(const OracleHit&, const OracleHit&) = default;
};

std::vector<OracleHit> findPowerMultiples(const RecurrenceSpec& spec, const EquationSpec& eq, std::uint64_t nMax);

/// Same search over precomputed terms G_0 .. G_{terms.size()-1}.
std::vector<OracleHit> findPowerMultiples(const std::vector<BigInt>& terms, const EquationSpec& eq);

struct SoundnessViolation {
  OracleHit hit;
  std::uint64_t residue = 0;  // hit.n mod N, absent from J
};

struct SoundnessVerdict {
  std::uint64_t modulus = 0;
  std::uint64_t hitsChecked = 0;
  std::vector<SoundnessViolation> violations;

  bool sound() const { return violations.empty(); }
};

SoundnessVerdict certifySoundness(const std::vector<OracleHit>& hits, const SieveOutcome& outcome);
SoundnessVerdict certifySoundness(const RecurrenceSpec& spec, const EquationSpec& eq, const SieveOutcome& outcome,
                                  std::uint64_t nMax);

}  // namespace powsieve
