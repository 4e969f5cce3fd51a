#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "doctest.h"
#include "powsieve/density.hpp"
#include "powsieve/grid.hpp"
#include "powsieve/period_cache.hpp"
#include "powsieve/report.hpp"
#include "powsieve/sweep.hpp"

#ifndef POWSIEVE_GOLDEN_DIR
#error "POWSIEVE_GOLDEN_DIR must point at tests/golden"
#endif

using namespace powsieve;
namespace fs = std::filesystem;
using Kind = Classification::Kind;

namespace {

bool contains(const std::vector<RecurrenceSpec>& v, std::int64_t u, std::int64_t w) {
  return std::any_of(v.begin(), v.end(), [&](const auto& s) { return s.u == u && s.v == w; });
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "powsieve-tests";
  fs::create_directories(dir);
  return dir / name;
}

SweepConfig smallConfig() {
  SweepConfig c;
  c.maxAB = 3;
  c.maxInit = 4;
  c.cutoff = 2000;
  c.qList = {3, 5};
  c.kMax = 12;
  return c;
}

}  // namespace

TEST_CASE("coefficient blocks are ordered by A + B then A") {
  const auto b = coefficientBlocks(4);
  const std::vector<std::pair<std::int64_t, std::int64_t>> want{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {2, 2}, {3, 1}};
  CHECK(b == want);
}

TEST_CASE("grid dedup examples") {
  const auto fib = enumerateBlock(1, 1, 9);
  CHECK_FALSE(contains(fib, 1, 2));
  CHECK_FALSE(contains(fib, 1, 1));
  CHECK_FALSE(contains(fib, 1, 0));
  CHECK(contains(fib, 0, 1));
  CHECK(contains(fib, 2, 9));
  CHECK_FALSE(contains(fib, 0, 0));
  const auto b12 = enumerateBlock(1, 2, 9);
  CHECK(contains(b12, 5, 0));
  CHECK_FALSE(contains(b12, 1, 2));  // 2^n, pure power
  for (const auto& s : b12) CHECK_FALSE(isPurePowerForm(s));
}

TEST_CASE("gridChain walks both directions inside the box") {
  const auto chain = gridChain({1, 1, 1, 2}, 9);
  const std::set<std::pair<std::int64_t, std::int64_t>> got(chain.begin(), chain.end());
  const std::set<std::pair<std::int64_t, std::int64_t>> want{{1, 2}, {1, 1}, {0, 1}, {1, 0}, {2, 3}, {3, 5}, {5, 8}};
  CHECK(got == want);
  CHECK(chain.front() == std::pair<std::int64_t, std::int64_t>{1, 2});
}

TEST_CASE("retained specs are pairwise shift-inequivalent") {
  for (auto [a, b] : coefficientBlocks(4)) {
    const auto block = enumerateBlock(a, b, 9);
    for (std::size_t i = 0; i < block.size(); ++i)
      for (std::size_t j = i + 1; j < block.size(); ++j)
        CHECK_FALSE(shiftEquivalent(block[i], block[j], 20).has_value());
  }
}

TEST_CASE("grid rows of the (3,1) block equal the reference table") {
  const auto t = readTable(fs::path(POWSIEVE_GOLDEN_DIR) / "table06.txt");
  std::vector<std::pair<std::int64_t, std::int64_t>> want;
  for (const auto& r : t.rows) want.emplace_back(r.g0, r.g1);
  std::vector<std::pair<std::int64_t, std::int64_t>> got;
  for (const auto& s : enumerateBlock(3, 1, 9)) got.emplace_back(s.u, s.v);
  CHECK(got == want);
}

TEST_CASE("q-power free") {
  CHECK_FALSE(qPowerFree(8, 3));
  CHECK_FALSE(qPowerFree(16, 3));
  CHECK_FALSE(qPowerFree(27, 3));
  CHECK(qPowerFree(8, 5));
  CHECK(qPowerFree(16, 5));
  CHECK_FALSE(qPowerFree(32, 5));
  CHECK(qPowerFree(12, 3));
  CHECK(qPowerFree(-12, 3));
  CHECK_FALSE(qPowerFree(0, 3));
  CHECK(qPowerFreeRange(2, 30, 3).size() == 25);
}

TEST_CASE("SweepConfig validation") {
  SweepConfig c;
  CHECK_NOTHROW(c.validate());
  c.qList = {3, 4};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = {};
  c.jobs = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("period cache round trip") {
  PeriodCache cache;
  for (std::uint64_t p : {7, 11, 13, 101, 9973}) cache.lookup({1, 1, 0, 1}, p);
  cache.lookup({2, 3, 1, 1}, 5);
  CHECK(cache.size() == 6);
  CHECK(cache.misses() == 6);
  CHECK(cache.lookup({1, 1, 5, 5}, 7) == orderRecord({1, 1, 0, 1}, 7));  // keyed on (A, B, l) only
  CHECK(cache.hits() == 1);

  const auto path = scratch("cache.txt");
  cache.save(path);
  PeriodCache reloaded;
  reloaded.load(path);
  CHECK(reloaded.size() == 6);
  for (std::uint64_t p : {7, 11, 13, 101, 9973}) CHECK(reloaded.lookup({1, 1, 0, 1}, p) == orderRecord({1, 1, 0, 1}, p));
  CHECK(reloaded.misses() == 0);
  CHECK(reloaded.period({1, 1, 0, 1}, 11) == minimalPeriod({1, 1, 0, 1}, 11));

  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  CHECK(header == PeriodCache::kHeader);
}

TEST_CASE("period cache rejects bad files") {
  const auto bad = scratch("bad-cache.txt");
  {
    std::ofstream(bad) << "powsieve-period-cache v0\n";
  }
  PeriodCache c;
  CHECK_THROWS_AS(c.load(bad), std::runtime_error);
  {
    std::ofstream(bad) << PeriodCache::kHeader << "\n1 1 7 x l-1 1 0\n";
  }
  CHECK_THROWS_AS(c.load(bad), std::runtime_error);
  CHECK_THROWS_AS(c.load(scratch("missing-cache.txt")), std::runtime_error);
}

TEST_CASE("entry rendering round-trips") {
  CHECK(renderEntry({Kind::Empty, 0, 0}) == "\xE2\x88\x85");
  CHECK(renderEntry({Kind::Single, 0, 1}) == "{0}");
  CHECK(renderEntry({Kind::FiberClass, -1, 2}) == "{-1}_2");
  CHECK(renderEntry({Kind::Scattered, 0, 96}) == "96");
  std::mt19937_64 rng(1);
  for (int i = 0; i < 500; ++i) {
    const Kind kind = static_cast<Kind>(rng() % 4);
    Classification c{kind, 0, 0};
    if (kind == Kind::Single) c = {kind, static_cast<std::int64_t>(rng() % 2001) - 1000, 1};
    if (kind == Kind::FiberClass) c = {kind, static_cast<std::int64_t>(rng() % 2001) - 1000, 2 + rng() % 50};
    if (kind == Kind::Scattered) c = {kind, 0, 2 + rng() % 500};
    CHECK(parseEntry(renderEntry(c)) == c);
  }
  for (const char* bad : {"", "{", "{1}_", "{1}_1", "1", "x", "{a}"}) CHECK_THROWS(parseEntry(bad));
}

TEST_CASE("k-list rendering round-trips") {
  const std::vector<std::int64_t> ks{5, 6, 9, 10, 12, 13, 14, 15, 17, 19, 20, 21, 22, 23, 26, 30};
  CHECK(renderKList(ks) == "5,6,9,10,12-15,17,19-23,26,30");
  CHECK(parseKList(renderKList(ks)) == ks);
  CHECK(renderKList({}) == "-");
  CHECK(parseKList("-").empty());
  CHECK(parseKList("2-4,7") == std::vector<std::int64_t>{2, 3, 4, 7});
  CHECK_THROWS(parseKList("5-2"));
}

TEST_CASE("reference tables parse and re-render identically") {
  for (int n = 1; n <= 12; ++n) {
    char name[32];
    std::snprintf(name, sizeof name, "table%02d.txt", n);
    const auto path = fs::path(POWSIEVE_GOLDEN_DIR) / name;
    const auto t = readTable(path);
    CHECK(t.number == n);
    CHECK(t.kind == (n <= 6 ? PaperTable::Kind::Power : PaperTable::Kind::Impossible));
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(renderTable(t) == buf.str());
    CHECK(parseTable(renderTable(t)) == t);
  }
}

TEST_CASE("table diff finds changed cells and rows") {
  PaperTable a{1, PaperTable::Kind::Power, 1, 1, {3, 5}, {100, 200}, {{0, 1, {"96", "42"}}, {2, 9, {"\xE2\x88\x85", "{0}"}}}};
  CHECK(diffTables(a, a).empty());
  PaperTable b = a;
  b.rows[0].cells[1] = "{1}_2";
  b.moduli[0] = 101;
  b.rows.push_back({3, 3, {"2", "2"}});
  const auto d = diffTables(a, b);
  REQUIRE(d.size() == 3);
  CHECK(d[0].column == "N_3");
  CHECK(d[1].column == "q=5");
  CHECK(d[1].expected == "42");
  CHECK(d[1].actual == "{1}_2");
  CHECK(d[2].column == "row");
  CHECK_FALSE(renderDiffs(d).empty());
}

TEST_CASE("sweep is independent of cache state and worker count") {
  const auto config = smallConfig();
  PeriodCache cold;
  const auto first = sweep(config, cold);
  const auto path = scratch("sweep-cache.txt");
  cold.save(path);

  PeriodCache warm;
  warm.load(path);
  auto threaded = config;
  threaded.jobs = 3;
  const auto second = sweep(threaded, warm);
  CHECK(warm.misses() == 0);

  const auto render = [](const SweepResult& r) {
    std::string s;
    for (const auto& t : tablesFromSweep(r)) s += renderTable(t);
    return s;
  };
  CHECK(render(first) == render(second));
  CHECK(delimitedSweep(first) == delimitedSweep(second));
  auto j1 = toJson(first), j2 = toJson(second);
  j2["config"]["jobs"] = j1["config"]["jobs"];
  CHECK(j1.dump() == j2.dump());
  CHECK(first.errors().empty());

  // Every rendered power cell parses back to the classification it came from.
  for (const auto& block : first.blocks)
    for (const auto& row : block.power)
      for (const auto& cell : row.cells) {
        REQUIRE(cell.outcome.has_value());
        CHECK(parseEntry(renderEntry(cell.outcome->classification)) == cell.outcome->classification);
      }
}

TEST_CASE("sweep reports failing cells without aborting") {
  auto config = smallConfig();
  config.cutoff = 6;  // no prime = 1 mod q qualifies
  PeriodCache cache;
  const auto r = sweep(config, cache, {.impossibility = false});
  CHECK_FALSE(r.errors().empty());
  CHECK(r.blocks.size() == 3);
  for (const auto& t : tablesFromSweep(r))
    for (const auto& row : t.rows)
      for (const auto& c : row.cells) CHECK(c == "ERR");
}

TEST_CASE("sweep selection") {
  PeriodCache cache;
  const auto r = sweep(smallConfig(), cache, {.impossibility = false, .block = std::pair<std::int64_t, std::int64_t>{1, 2}});
  REQUIRE(r.blocks.size() == 1);
  CHECK(r.blocks[0].A == 1);
  CHECK(r.blocks[0].position == 1);
  CHECK(r.blocks[0].impossible.empty());
  const auto tables = tablesFromSweep(r);
  REQUIRE(tables.size() == 1);
  CHECK(tables[0].number == 2);
}

TEST_CASE("structured documents carry a schema version") {
  const auto doc = document("sieve", toJson(runSieve({1, 1, 0, 1}, {1, 3})));
  CHECK(doc["schemaVersion"] == kSchemaVersion);
  CHECK(doc["schema"] == "powsieve.sieve");
  CHECK(doc["sieve"]["modulus"] == 186624);
  CHECK(doc["sieve"]["classification"]["entry"] == "96");
}

TEST_CASE("densityScan") {
  const RecurrenceSpec fib{1, 1, 0, 1};
  CHECK(densityScan(fib, 3, 6).candidates == 0);
  CHECK(densityScan(fib, 3, 6).admitted.empty());

  const auto small = densityScan(fib, 3, 100);
  std::vector<std::uint64_t> all = small.admitted;
  all.insert(all.end(), small.rejected.begin(), small.rejected.end());
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<std::uint64_t>{7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97});

  const auto big = densityScan(fib, 3, 10000);
  const auto primes = selectPrimes(fib, {1, 3});
  std::vector<std::uint64_t> accepted;
  for (const auto& p : primes) accepted.push_back(p.prime);
  CHECK(big.admitted == accepted);
  CHECK(big.fraction() > 0.0);
  CHECK(big.fraction() < 1.0);
}

TEST_CASE("parallelFor propagates exceptions") {
  std::vector<int> seen(50, 0);
  parallelFor(50, 4, [&](std::size_t i) { seen[i] = 1; });
  CHECK(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
  CHECK_THROWS_AS(parallelFor(10, 3, [](std::size_t i) { if (i == 5) throw std::runtime_error("x"); }),
                  std::runtime_error);
}
