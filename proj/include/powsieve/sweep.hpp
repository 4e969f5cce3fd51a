#pragma once
// Grid sweep: per (A, B) block, the header moduli, the k = 1 outcome for each
// (spec, q), and the constants k whose sieve comes out empty.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "powsieve/grid.hpp"
#include "powsieve/period_cache.hpp"
#include "powsieve/sieve.hpp"

namespace powsieve {

/// Run fn(0) .. fn(count-1) on `jobs` threads. Indices are handed out in
/// order; fn must only touch state owned by its index. The first exception
/// thrown by fn is rethrown after all workers stop.
void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct CellResult {
  std::optional<SieveOutcome> outcome;
  std::string error;  // set iff outcome is absent
};

struct PowerRow {
  RecurrenceSpec spec;
  std::vector<CellResult> cells;  // aligned with SweepConfig::qList
};

struct ImpossibilityRow {
  RecurrenceSpec spec;
  std::vector<std::vector<std::int64_t>> kLists;  // aligned with SweepConfig::impossibilityQ
  std::vector<std::string> errors;                // per-k failures, "q=.. k=..: message"
};

struct BlockResult {
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::size_t position = 0;  // index in coefficientBlocks(maxAB)
  std::vector<std::optional<std::uint64_t>> headerN;  // aligned with qList; empty when no prime qualifies
  std::vector<PowerRow> power;
  std::vector<ImpossibilityRow> impossible;
};

struct SweepSelection {
  bool power = true;
  bool impossibility = true;
  /// Restrict to one (A, B) block.
  std::optional<std::pair<std::int64_t, std::int64_t>> block;
};

struct SweepResult {
  SweepConfig config;
  std::vector<BlockResult> blocks;

  /// Every cell-level failure, in grid order.
  std::vector<std::string> errors() const;
};

/// Header modulus for (A, B, q): N of the k = 1 sieve with the matrix-order
/// period source, which does not depend on the initial values.
std::optional<std::uint64_t> headerModulus(std::int64_t A, std::int64_t B, std::uint64_t q, const SieveOptions& options);

SweepResult sweep(const SweepConfig& config, PeriodCache& cache, const SweepSelection& selection = {});

}  // namespace powsieve
