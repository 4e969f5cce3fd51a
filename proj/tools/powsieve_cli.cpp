// powsieve: command-line front end for the congruence sieve.
//
// Exit codes: 0 ok, 1 usage or input error, 2 soundness violation (certify),
// 3 no qualifying primes.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "powsieve/density.hpp"
#include "powsieve/grid.hpp"
#include "powsieve/kernels.hpp"
#include "powsieve/oracle.hpp"
#include "powsieve/period_cache.hpp"
#include "powsieve/report.hpp"
#include "powsieve/sieve.hpp"
#include "powsieve/sweep.hpp"

namespace fs = std::filesystem;
using namespace powsieve;

namespace {

enum Exit { kOk = 0, kUsage = 1, kUnsound = 2, kNoPrimes = 3 };

struct Common {
  std::int64_t A = 1, B = 1, g0 = 0, g1 = 1, k = 1;
  std::uint64_t q = 3;
  std::uint64_t cutoff = 10000;
  std::uint64_t nMax = 300;
  std::string periodSource = "order";
  std::string admission = "smooth";
  bool multipass = false;
  std::string format = "structured";
  std::string cache;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string isa;

  RecurrenceSpec spec() const { return {A, B, g0, g1}; }
  EquationSpec eq() const { return {k, q}; }
  OutputFormat outputFormat() const { return parseOutputFormat(format); }
  SieveOptions options() const {
    SieveOptions o;
    o.cutoff = cutoff;
    o.periodSource = periodSource == "pi" ? PeriodSource::MinimalPeriod : PeriodSource::MatrixOrder;
    o.admission = admission == "ratio" ? Admission::RatioBelowQ : Admission::SmoothPeriod;
    o.multipass = multipass;
    return o;
  }
};

void addSpec(CLI::App* app, Common& c) {
  app->add_option("--A", c.A, "coefficient A")->capture_default_str();
  app->add_option("--B", c.B, "coefficient B")->capture_default_str();
  app->add_option("--g0", c.g0, "initial value G_0")->capture_default_str();
  app->add_option("--g1", c.g1, "initial value G_1")->capture_default_str();
}

void addEquation(CLI::App* app, Common& c) {
  app->add_option("--k", c.k, "constant k in G_n = k x^q")->capture_default_str();
  app->add_option("--q", c.q, "prime exponent q >= 3")->capture_default_str();
}

void addSieve(CLI::App* app, Common& c) {
  app->add_option("--cutoff", c.cutoff, "largest prime considered")->capture_default_str();
  app->add_option("--period-source", c.periodSource, "period fed into the modulus")
      ->check(CLI::IsMember({"order", "pi"}))
      ->capture_default_str();
  app->add_option("--admission", c.admission, "prime admission rule")
      ->check(CLI::IsMember({"smooth", "ratio"}))
      ->capture_default_str();
  app->add_flag("--multipass", c.multipass, "ratio admission: rescan skipped primes");
}

void addOutput(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"structured", "delimited", "paper"}))
      ->capture_default_str();
  app->add_option("--cache", c.cache, "period cache file (read if present, then rewritten)");
  app->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  writeFile(out, text);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json specJson(const RecurrenceSpec& s) { return {{"A", s.A}, {"B", s.B}, {"g0", s.u}, {"g1", s.v}}; }

class CacheScope {
 public:
  explicit CacheScope(std::string path) : path_(std::move(path)) {
    if (!path_.empty() && fs::exists(path_)) cache_.load(path_);
  }
  ~CacheScope() {
    if (path_.empty()) return;
    try {
      cache_.save(path_);
    } catch (const std::exception& e) {
      std::cerr << "warning: " << e.what() << '\n';
    }
  }
  PeriodCache& cache() { return cache_; }

 private:
  std::string path_;
  PeriodCache cache_;
};

int runSieveCmd(const Common& c, const std::string& out) {
  CacheScope scope(c.cache);
  SieveOptions o = c.options();
  o.orders = scope.cache().lookupFn();
  const auto outcome = runSieve(c.spec(), c.eq(), o);
  switch (c.outputFormat()) {
    case OutputFormat::Structured:
      emit(dump(document("sieve", {{"spec", specJson(c.spec())},
                                   {"k", c.k},
                                   {"q", c.q},
                                   {"cutoff", c.cutoff},
                                   {"outcome", toJson(outcome)}})),
           out);
      break;
    case OutputFormat::Delimited: emit(delimitedTrace(outcome), out); break;
    case OutputFormat::Paper: emit(renderEntry(outcome.classification) + "\n", out); break;
  }
  return kOk;
}

int runOracleCmd(const Common& c, const std::string& out) {
  const auto hits = findPowerMultiples(c.spec(), c.eq(), c.nMax);
  std::ostringstream text;
  switch (c.outputFormat()) {
    case OutputFormat::Structured: {
      nlohmann::json list = nlohmann::json::array();
      for (const auto& h : hits) list.push_back(toJson(h));
      text << dump(document("oracle", {{"spec", specJson(c.spec())}, {"k", c.k}, {"q", c.q}, {"nMax", c.nMax}, {"hits", list}}));
      break;
    }
    case OutputFormat::Delimited:
      text << "n\tx\tg\ttrivial\n";
      for (const auto& h : hits) text << h.n << '\t' << h.x << '\t' << h.gValue << '\t' << (h.trivial ? 1 : 0) << '\n';
      break;
    case OutputFormat::Paper:
      for (const auto& h : hits) text << "G_" << h.n << " = " << c.k << "*" << h.x << "^" << c.q << '\n';
      break;
  }
  emit(text.str(), out);
  return kOk;
}

int runCertifyCmd(const Common& c, const std::string& out, const std::vector<std::uint64_t>& drop) {
  CacheScope scope(c.cache);
  SieveOptions o = c.options();
  o.orders = scope.cache().lookupFn();
  auto outcome = runSieve(c.spec(), c.eq(), o);
  // Fault injection for exercising the checker: remove residues of given indices.
  for (std::uint64_t n : drop) std::erase(outcome.residues, n % outcome.modulus);
  const auto verdict = certifySoundness(c.spec(), c.eq(), outcome, c.nMax);
  switch (c.outputFormat()) {
    case OutputFormat::Structured:
      emit(dump(document("certify", {{"spec", specJson(c.spec())},
                                     {"k", c.k},
                                     {"q", c.q},
                                     {"nMax", c.nMax},
                                     {"entry", renderEntry(outcome.classification)},
                                     {"verdict", toJson(verdict)}})),
           out);
      break;
    case OutputFormat::Delimited: {
      std::ostringstream text;
      text << "n\tresidue\n";
      for (const auto& v : verdict.violations) text << v.hit.n << '\t' << v.residue << '\n';
      emit(text.str(), out);
      break;
    }
    case OutputFormat::Paper: {
      std::ostringstream text;
      text << (verdict.sound() ? "sound" : "UNSOUND") << ": " << verdict.hitsChecked << " hits checked mod "
           << verdict.modulus << ", " << verdict.violations.size() << " violations\n";
      for (const auto& v : verdict.violations) text << "  n=" << v.hit.n << " residue " << v.residue << " not in J\n";
      emit(text.str(), out);
      break;
    }
  }
  return verdict.sound() ? kOk : kUnsound;
}

int runPeriodCmd(const Common& c, std::uint64_t prime, const std::string& out) {
  CacheScope scope(c.cache);
  const auto rec = scope.cache().period(c.spec(), prime);
  switch (c.outputFormat()) {
    case OutputFormat::Structured:
      emit(dump(document("period", {{"spec", specJson(c.spec())}, {"record", toJson(rec)}})), out);
      break;
    case OutputFormat::Delimited: {
      std::ostringstream text;
      text << "prime\tpi\tordM\tbound\tlegendre\tsquare\n"
           << rec.prime << '\t' << rec.piEll << '\t' << rec.ordM << '\t' << to_string(rec.boundCase) << '\t'
           << rec.legendreDelta << '\t' << (rec.deltaSquare ? 1 : 0) << '\n';
      emit(text.str(), out);
      break;
    }
    case OutputFormat::Paper: {
      std::ostringstream text;
      text << "l=" << rec.prime << " pi=" << rec.piEll << " ord=" << rec.ordM << " | "
           << boundValue(rec.boundCase, rec.prime) << " (" << to_string(rec.boundCase) << ")\n";
      emit(text.str(), out);
      break;
    }
  }
  return kOk;
}

int runDensityCmd(const Common& c, std::uint64_t bound, const std::string& out) {
  CacheScope scope(c.cache);
  const auto report = densityScan(c.spec(), c.q, bound, c.options().periodSource, scope.cache().lookupFn());
  std::ostringstream text;
  switch (c.outputFormat()) {
    case OutputFormat::Structured: text << dump(document("density", toJson(report))); break;
    case OutputFormat::Delimited:
      text << "prime\tadmitted\n";
      {
        std::vector<std::pair<std::uint64_t, int>> all;
        for (auto p : report.admitted) all.emplace_back(p, 1);
        for (auto p : report.rejected) all.emplace_back(p, 0);
        std::sort(all.begin(), all.end());
        for (auto [p, a] : all) text << p << '\t' << a << '\n';
      }
      break;
    case OutputFormat::Paper:
      text << "q=" << report.q << " bound=" << report.bound << ": " << report.admitted.size() << " of "
           << report.candidates << " candidates admitted (" << report.fraction() << ")\n";
      break;
  }
  emit(text.str(), out);
  return kOk;
}

struct SweepArgs {
  std::int64_t maxAB = 4, maxInit = 9, kMin = 2, kMax = 30;
  std::vector<std::uint64_t> qList{3, 5, 7, 11, 13, 17};
  std::vector<std::uint64_t> impossibilityQ{3, 5};
  std::string tables = "all";
  std::vector<std::int64_t> block;
  std::string out;
  std::string golden;
};

std::string tableFileName(int number) {
  std::ostringstream name;
  name << "table" << (number < 10 ? "0" : "") << number << ".txt";
  return name.str();
}

int runSweepCmd(const Common& c, const SweepArgs& a) {
  SweepConfig config;
  config.maxAB = a.maxAB;
  config.maxInit = a.maxInit;
  config.cutoff = c.cutoff;
  config.qList = a.qList;
  config.impossibilityQ = a.impossibilityQ;
  config.kMin = a.kMin;
  config.kMax = a.kMax;
  const auto o = c.options();
  config.periodSource = o.periodSource;
  config.admission = o.admission;
  config.multipass = o.multipass;
  config.jobs = c.jobs;

  SweepSelection selection;
  selection.power = a.tables != "impossible";
  selection.impossibility = a.tables != "power";
  if (!a.block.empty()) {
    if (a.block.size() != 2) throw CLI::ValidationError("--block", "expects A,B");
    selection.block = std::pair{a.block[0], a.block[1]};
  }

  CacheScope scope(c.cache);
  const auto result = sweep(config, scope.cache(), selection);
  const auto tables = tablesFromSweep(result);

  if (!a.out.empty()) fs::create_directories(a.out);
  auto target = [&](const std::string& name) { return a.out.empty() ? std::string() : (fs::path(a.out) / name).string(); };
  switch (c.outputFormat()) {
    case OutputFormat::Structured: emit(dump(document("sweep", toJson(result))), target("sweep.json")); break;
    case OutputFormat::Delimited: emit(delimitedSweep(result), target("sweep.tsv")); break;
    case OutputFormat::Paper:
      for (const auto& t : tables) emit(renderTable(t), target(tableFileName(t.number)));
      break;
  }

  for (const auto& e : result.errors()) std::cerr << "cell error: " << e << '\n';

  if (!a.golden.empty()) {
    std::ostringstream report;
    std::size_t total = 0;
    for (const auto& t : tables) {
      const fs::path path = fs::path(a.golden) / tableFileName(t.number);
      if (!fs::exists(path)) continue;
      const auto diffs = diffTables(readTable(path), t);
      total += diffs.size();
      report << renderDiffs(diffs);
      // Attach the sieve trace for every mismatched power cell.
      if (t.kind != PaperTable::Kind::Power) continue;
      for (const auto& d : diffs) {
        if (d.column.rfind("q=", 0) != 0) continue;
        const std::uint64_t q = std::stoull(d.column.substr(2));
        for (const auto& block : result.blocks) {
          if (block.A != t.A || block.B != t.B) continue;
          for (const auto& row : block.power) {
            if (row.spec.u != d.g0 || row.spec.v != d.g1) continue;
            for (std::size_t i = 0; i < config.qList.size(); ++i)
              if (config.qList[i] == q && row.cells[i].outcome) report << traceSummary(*row.cells[i].outcome);
          }
        }
      }
    }
    report << total << " differing cells\n";
    if (a.out.empty()) std::cerr << report.str();
    else emit(report.str(), target("diffs.txt"));
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence sieve for G_n = k x^q over binary recurrences"};
  app.require_subcommand(1);
  Common c;
  std::string out;
  std::uint64_t prime = 0, bound = 10000;
  std::vector<std::uint64_t> drop;
  SweepArgs sw;

  auto* sieveCmd = app.add_subcommand("sieve", "run the sieve for one spec and equation");
  auto* sweepCmd = app.add_subcommand("sweep", "sweep the parameter grid and emit tables");
  auto* oracleCmd = app.add_subcommand("oracle", "exhaustive search for solutions up to --n-max");
  auto* certifyCmd = app.add_subcommand("certify", "sieve, then check every oracle hit lands in J");
  auto* periodCmd = app.add_subcommand("period", "period data of a spec modulo one prime");
  auto* densityCmd = app.add_subcommand("density", "count primes whose period is q-smooth");

  for (auto* cmd : {sieveCmd, sweepCmd, oracleCmd, certifyCmd, periodCmd, densityCmd}) {
    addOutput(cmd, c);
    cmd->add_option("--isa", c.isa, "force kernel set")->check(CLI::IsMember({"scalar", "avx2"}));
  }
  for (auto* cmd : {sieveCmd, oracleCmd, certifyCmd, periodCmd, densityCmd}) {
    addSpec(cmd, c);
    cmd->add_option("--out", out, "write output to this file instead of stdout");
  }
  for (auto* cmd : {sieveCmd, oracleCmd, certifyCmd}) addEquation(cmd, c);
  for (auto* cmd : {sieveCmd, certifyCmd, sweepCmd}) addSieve(cmd, c);
  densityCmd->add_option("--q", c.q, "prime exponent q >= 3")->capture_default_str();
  densityCmd->add_option("--period-source", c.periodSource, "period tested for smoothness")
      ->check(CLI::IsMember({"order", "pi"}));
  densityCmd->add_option("--bound", bound, "prime bound")->capture_default_str();
  for (auto* cmd : {oracleCmd, certifyCmd})
    cmd->add_option("--n-max", c.nMax, "largest index searched")->capture_default_str();
  certifyCmd->add_option("--drop", drop, "remove the residue of these indices from J before checking");
  periodCmd->add_option("--prime", prime, "prime l not dividing B")->required();

  sweepCmd->add_option("--max-ab", sw.maxAB, "A + B bound")->capture_default_str();
  sweepCmd->add_option("--max-init", sw.maxInit, "initial value bound")->capture_default_str();
  sweepCmd->add_option("--q-list", sw.qList, "exponents of the power tables")->delimiter(',');
  sweepCmd->add_option("--impossible-q", sw.impossibilityQ, "exponents of the impossibility tables")->delimiter(',');
  sweepCmd->add_option("--k-min", sw.kMin, "smallest k of the impossibility tables")->capture_default_str();
  sweepCmd->add_option("--k-max", sw.kMax, "largest k of the impossibility tables")->capture_default_str();
  sweepCmd->add_option("--tables", sw.tables, "which tables to compute")
      ->check(CLI::IsMember({"all", "power", "impossible"}))
      ->capture_default_str();
  sweepCmd->add_option("--block", sw.block, "restrict to one block, as A,B")->delimiter(',');
  sweepCmd->add_option("--out", sw.out, "output directory");
  sweepCmd->add_option("--golden", sw.golden, "directory of reference tables to diff against");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (c.isa == "scalar") kernels::setActiveIsa(kernels::Isa::Scalar);
    if (c.isa == "avx2" && kernels::setActiveIsa(kernels::Isa::Avx2) != kernels::Isa::Avx2)
      std::cerr << "warning: avx2 kernels unavailable, using scalar\n";
    if (sieveCmd->parsed()) return runSieveCmd(c, out);
    if (oracleCmd->parsed()) return runOracleCmd(c, out);
    if (certifyCmd->parsed()) return runCertifyCmd(c, out, drop);
    if (periodCmd->parsed()) return runPeriodCmd(c, prime, out);
    if (densityCmd->parsed()) return runDensityCmd(c, bound, out);
    if (sweepCmd->parsed()) return runSweepCmd(c, sw);
  } catch (const NoQualifyingPrimes& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNoPrimes;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
