#pragma once
// Output formats: a self-describing JSON document, tab-separated rows, and the
// table notation used by the golden files.
//
// Table text format (one table per file, whitespace-separated tokens):
//
//   powsieve-table v1
//   table <number> power <A> <B>
//   modulus <q> <N|->            one line per column
//   columns <q> ...
//   row <G_0> <G_1> <entry> ...  entry: ∅ | {a} | {a}_m | m | ERR
//
// Impossibility tables use `impossible` instead of `power`, no modulus lines,
// and entries that are k-lists such as 5,6,9,12-15 (or - when empty).

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "powsieve/density.hpp"
#include "powsieve/oracle.hpp"
#include "powsieve/sieve.hpp"
#include "powsieve/sweep.hpp"

namespace powsieve {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { Structured, Delimited, Paper };
OutputFormat parseOutputFormat(const std::string& s);

std::string renderEntry(const Classification& c);
/// Inverse of renderEntry; throws std::invalid_argument on malformed text.
Classification parseEntry(const std::string& text);

std::string renderKList(const std::vector<std::int64_t>& ks);
std::vector<std::int64_t> parseKList(const std::string& text);

struct TableRow {
  std::int64_t g0 = 0;
  std::int64_t g1 = 0;
  std::vector<std::string> cells;
  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct PaperTable {
  enum class Kind { Power, Impossible };
  int number = 0;
  Kind kind = Kind::Power;
  std::int64_t A = 0;
  std::int64_t B = 0;
  std::vector<std::uint64_t> columns;
  std::vector<std::optional<std::uint64_t>> moduli;  // power tables only
  std::vector<TableRow> rows;
  friend bool operator==(const PaperTable&, const PaperTable&) = default;
};

std::string renderTable(const PaperTable& table);
PaperTable parseTable(const std::string& text);
PaperTable readTable(const std::filesystem::path& path);
void writeFile(const std::filesystem::path& path, const std::string& content);

/// Power tables numbered 1.., then impossibility tables after all power blocks.
/// Impossibility rows with only empty lists are left out.
std::vector<PaperTable> tablesFromSweep(const SweepResult& result);

struct CellDiff {
  int table = 0;
  std::int64_t g0 = 0;
  std::int64_t g1 = 0;
  std::string column;  // "q=5", "N_7", or "row"
  std::string expected;
  std::string actual;
};

/// Cell-level differences. Missing impossibility rows count as empty lists;
/// a missing power row is reported with column "row".
std::vector<CellDiff> diffTables(const PaperTable& expected, const PaperTable& actual);
std::string renderDiffs(const std::vector<CellDiff>& diffs);

nlohmann::json toJson(const SievePrime& p);
nlohmann::json toJson(const SieveOutcome& outcome, bool withResidues = true);
nlohmann::json toJson(const PeriodRecord& r);
nlohmann::json toJson(const OracleHit& h);
nlohmann::json toJson(const SoundnessVerdict& v);
nlohmann::json toJson(const DensityReport& d);
nlohmann::json toJson(const SweepResult& r);

/// Wraps a payload as {"schema": ..., "schemaVersion": ..., <kind>: payload}.
nlohmann::json document(const std::string& kind, nlohmann::json payload);

std::string delimitedTrace(const SieveOutcome& outcome);
std::string delimitedSweep(const SweepResult& result);

/// Human-readable per-prime trace, used alongside table diffs.
std::string traceSummary(const SieveOutcome& outcome);

}  // namespace powsieve
