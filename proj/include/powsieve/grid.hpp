#pragma once
// The parameter grid of the sweep: coefficient blocks, shift-deduplicated
// initial pairs, and the q-power-free constants for impossibility lists.

#include <cstdint>
#include <utility>
#include <vector>

#include "powsieve/recurrence.hpp"
#include "powsieve/sieve.hpp"

namespace powsieve {

struct SweepConfig {
  std::int64_t maxAB = 4;    // A + B <= maxAB, A, B >= 1
  std::int64_t maxInit = 9;  // 0 <= G_0, G_1 <= maxInit
  std::uint64_t cutoff = 10000;
  std::vector<std::uint64_t> qList{3, 5, 7, 11, 13, 17};
  std::int64_t kMin = 2;
  std::int64_t kMax = 30;
  std::vector<std::uint64_t> impossibilityQ{3, 5};
  PeriodSource periodSource = PeriodSource::MatrixOrder;
  Admission admission = Admission::SmoothPeriod;
  bool multipass = false;
  unsigned jobs = 1;

  /// Throws std::invalid_argument on non-positive bounds or a bad exponent.
  void validate() const;
  SieveOptions sieveOptions() const;
};

/// (A, B) blocks ordered by A + B, then by A.
std::vector<std::pair<std::int64_t, std::int64_t>> coefficientBlocks(std::int64_t maxAB);

/// Initial pairs that stay inside [0, maxInit] when stepping from (u, v):
/// backwards while G_{-1} is an integer in range, forwards while the next
/// term is. Includes (u, v) itself.
std::vector<std::pair<std::int64_t, std::int64_t>> gridChain(const RecurrenceSpec& spec, std::int64_t maxInit);

/// Specs of one block, ascending by (G_0, G_1). Drops (0, 0) and pure-power
/// sequences, and keeps one pair per in-grid shift chain: the
/// lexicographically smallest.
std::vector<RecurrenceSpec> enumerateBlock(std::int64_t A, std::int64_t B, std::int64_t maxInit);

std::vector<RecurrenceSpec> enumerateGrid(const SweepConfig& config);

/// No prime p with p^q | k.
bool qPowerFree(std::int64_t k, std::uint64_t q);
std::vector<std::int64_t> qPowerFreeRange(std::int64_t lo, std::int64_t hi, std::uint64_t q);

}  // namespace powsieve
