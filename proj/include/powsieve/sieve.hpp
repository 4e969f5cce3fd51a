#pragma once
// The congruence sieve for G_n = k x^q: choose primes l = 1 mod q, then
// repeatedly lift the admissible index set to the lcm of the periods and
// discard indices whose term is not k times a q-th power mod l.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "powsieve/modular.hpp"
#include "powsieve/recurrence.hpp"

namespace powsieve {

struct EquationSpec {
  std::int64_t k = 1;
  std::uint64_t q = 3;

  /// Throws std::invalid_argument unless k != 0 and q is a prime >= 3.
  void validate() const;
  friend bool operator==(const EquationSpec&, const EquationSpec&) = default;
};

/// Which per-prime period drives the modulus.
enum class PeriodSource {
  MatrixOrder,    // ord of the companion matrix; N depends on (A, B) only
  MinimalPeriod,  // pi_l of the particular sequence
};

/// Rule deciding whether a prime l = 1 mod q, l coprime to Bk, joins the sieve.
enum class Admission {
  /// Every prime factor of period(l) is <= q. Reproduces the reference table moduli.
  SmoothPeriod,
  /// lcm(n_i, period(l)) / n_i < q against the running modulus n_i.
  RatioBelowQ,
};

using OrderLookup = std::function<OrderRecord(const RecurrenceSpec&, std::uint64_t)>;

struct SieveOptions {
  std::uint64_t cutoff = 10000;
  PeriodSource periodSource = PeriodSource::MatrixOrder;
  Admission admission = Admission::SmoothPeriod;
  /// RatioBelowQ only: rescan skipped primes until no further prime qualifies.
  bool multipass = false;
  /// Source of (A, B, l) order data; empty means compute directly.
  OrderLookup orders;
};

struct SievePrime {
  std::uint64_t prime = 0;
  std::uint64_t period = 0;  // value fed into the lcm
  PeriodRecord record;
  std::uint64_t nBefore = 1;
  std::uint64_t nAfter = 1;
  std::uint64_t survivorsBefore = 0;
  std::uint64_t survivorsAfter = 0;

  friend bool operator==(const SievePrime&, const SievePrime&) = default;
};

struct Classification {
  enum class Kind { Empty, Single, FiberClass, Scattered };
  Kind kind = Kind::Empty;
  /// Single / FiberClass: class representative of least absolute value
  /// (modulo N, resp. N/count).
  std::int64_t representative = 0;
  /// |J| (0 for Empty, 1 for Single).
  std::uint64_t count = 0;

  friend bool operator==(const Classification&, const Classification&) = default;
};

std::string to_string(Classification::Kind kind);

struct SieveOutcome {
  std::uint64_t modulus = 1;
  std::vector<std::uint64_t> residues;  // ascending, each < modulus
  std::vector<SievePrime> trace;
  Classification classification;
  bool stoppedEarly = false;
  std::optional<std::uint64_t> emptiedBy;  // prime at which the set became empty

  friend bool operator==(const SieveOutcome&, const SieveOutcome&) = default;
};

class NoQualifyingPrimes : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool isSmooth(std::uint64_t n, std::uint64_t bound);

/// Primes admitted below the cutoff, in processing order, with running moduli.
/// Survivor counts are left at zero.
std::vector<SievePrime> selectPrimes(const RecurrenceSpec& spec, const EquationSpec& eq,
                                     const SieveOptions& options = {});

/// Residues n mod first.nAfter with G_n / k a q-th power mod first.prime.
std::vector<std::uint64_t> initialResidues(const RecurrenceSpec& spec, const EquationSpec& eq,
                                           const SievePrime& first);

/// Lift `current` (mod next.nBefore) to next.nAfter and drop indices whose term
/// fails the residue test at next.prime.
std::vector<std::uint64_t> liftAndFilter(const std::vector<std::uint64_t>& current, const SievePrime& next,
                                         const RecurrenceSpec& spec, const EquationSpec& eq);

SieveOutcome runSieve(const RecurrenceSpec& spec, const EquationSpec& eq, const SieveOptions& options = {});

/// Classify a residue set J in Z/NZ. Residues must be distinct and < N.
Classification classifyOutcome(std::uint64_t modulus, const std::vector<std::uint64_t>& residues);

}  // namespace powsieve
