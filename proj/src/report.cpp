#include "powsieve/report.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace powsieve {

using nlohmann::json;

OutputFormat parseOutputFormat(const std::string& s) {
  if (s == "structured") return OutputFormat::Structured;
  if (s == "delimited") return OutputFormat::Delimited;
  if (s == "paper") return OutputFormat::Paper;
  throw std::invalid_argument("unknown format '" + s + "'");
}

namespace {

constexpr const char* kEmpty = "\xE2\x88\x85";  // U+2205
constexpr const char* kTableHeader = "powsieve-table v1";

template <typename T>
T parseNumber(std::string_view s, const char* what) {
  T value{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty())
    throw std::invalid_argument(std::string("malformed ") + what + " '" + std::string(s) + "'");
  return value;
}

}  // namespace

std::string renderEntry(const Classification& c) {
  using Kind = Classification::Kind;
  switch (c.kind) {
    case Kind::Empty: return kEmpty;
    case Kind::Single: return "{" + std::to_string(c.representative) + "}";
    case Kind::FiberClass: return "{" + std::to_string(c.representative) + "}_" + std::to_string(c.count);
    case Kind::Scattered: return std::to_string(c.count);
  }
  return "?";
}

Classification parseEntry(const std::string& text) {
  using Kind = Classification::Kind;
  if (text == kEmpty) return {Kind::Empty, 0, 0};
  if (text.empty()) throw std::invalid_argument("empty table entry");
  if (text.front() == '{') {
    const auto close = text.find('}');
    if (close == std::string::npos) throw std::invalid_argument("malformed entry '" + text + "'");
    const auto a = parseNumber<std::int64_t>(std::string_view(text).substr(1, close - 1), "entry");
    const std::string_view rest = std::string_view(text).substr(close + 1);
    if (rest.empty()) return {Kind::Single, a, 1};
    if (rest.size() < 2 || rest.front() != '_') throw std::invalid_argument("malformed entry '" + text + "'");
    const auto m = parseNumber<std::uint64_t>(rest.substr(1), "entry");
    if (m < 2) throw std::invalid_argument("fiber entry needs m >= 2: '" + text + "'");
    return {Kind::FiberClass, a, m};
  }
  const auto m = parseNumber<std::uint64_t>(text, "entry");
  if (m < 2) throw std::invalid_argument("scattered entry needs m >= 2: '" + text + "'");
  return {Kind::Scattered, 0, m};
}

std::string renderKList(const std::vector<std::int64_t>& ks) {
  if (ks.empty()) return "-";
  std::vector<std::int64_t> sorted = ks;
  std::sort(sorted.begin(), sorted.end());
  std::string out;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j + 1 < sorted.size() && sorted[j + 1] == sorted[j] + 1) ++j;
    if (!out.empty()) out += ',';
    if (j - i >= 2) {
      out += std::to_string(sorted[i]) + "-" + std::to_string(sorted[j]);
    } else {
      for (std::size_t t = i; t <= j; ++t) out += (t > i ? "," : "") + std::to_string(sorted[t]);
    }
    i = j + 1;
  }
  return out;
}

std::vector<std::int64_t> parseKList(const std::string& text) {
  std::vector<std::int64_t> out;
  if (text == "-") return out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(parseNumber<std::int64_t>(item, "k-list"));
      continue;
    }
    const auto lo = parseNumber<std::int64_t>(std::string_view(item).substr(0, dash), "k-list");
    const auto hi = parseNumber<std::int64_t>(std::string_view(item).substr(dash + 1), "k-list");
    if (hi < lo) throw std::invalid_argument("descending range in k-list '" + item + "'");
    for (auto k = lo; k <= hi; ++k) out.push_back(k);
  }
  return out;
}

std::string renderTable(const PaperTable& t) {
  std::ostringstream out;
  out << kTableHeader << '\n';
  out << "table " << t.number << ' ' << (t.kind == PaperTable::Kind::Power ? "power" : "impossible") << ' ' << t.A
      << ' ' << t.B << '\n';
  for (std::size_t i = 0; i < t.moduli.size(); ++i)
    out << "modulus " << t.columns[i] << ' ' << (t.moduli[i] ? std::to_string(*t.moduli[i]) : "-") << '\n';
  out << "columns";
  for (auto q : t.columns) out << ' ' << q;
  out << '\n';
  for (const auto& row : t.rows) {
    out << "row " << row.g0 << ' ' << row.g1;
    for (const auto& c : row.cells) out << ' ' << c;
    out << '\n';
  }
  return out.str();
}

PaperTable parseTable(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTableHeader)
    throw std::invalid_argument(std::string("table text must start with '") + kTableHeader + "'");
  PaperTable t;
  bool haveTable = false, haveColumns = false;
  for (std::size_t lineNo = 2; std::getline(in, line); ++lineNo) {
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("line " + std::to_string(lineNo) + ": " + why);
    };
    std::vector<std::string> rest;
    for (std::string tok; fields >> tok;) rest.push_back(tok);
    if (tag == "table") {
      if (rest.size() != 4) fail("expected: table <n> <power|impossible> <A> <B>");
      t.number = parseNumber<int>(rest[0], "table number");
      if (rest[1] == "power") t.kind = PaperTable::Kind::Power;
      else if (rest[1] == "impossible") t.kind = PaperTable::Kind::Impossible;
      else fail("unknown table kind '" + rest[1] + "'");
      t.A = parseNumber<std::int64_t>(rest[2], "A");
      t.B = parseNumber<std::int64_t>(rest[3], "B");
      haveTable = true;
    } else if (tag == "modulus") {
      if (rest.size() != 2) fail("expected: modulus <q> <N|->");
      t.columns.push_back(parseNumber<std::uint64_t>(rest[0], "q"));
      t.moduli.push_back(rest[1] == "-" ? std::nullopt
                                        : std::optional(parseNumber<std::uint64_t>(rest[1], "modulus")));
    } else if (tag == "columns") {
      std::vector<std::uint64_t> cols;
      for (const auto& c : rest) cols.push_back(parseNumber<std::uint64_t>(c, "column"));
      if (!t.moduli.empty() && cols != t.columns) fail("columns disagree with modulus lines");
      t.columns = cols;
      haveColumns = true;
    } else if (tag == "row") {
      if (!haveColumns) fail("row before columns");
      if (rest.size() != t.columns.size() + 2) fail("row has wrong number of cells");
      TableRow row{parseNumber<std::int64_t>(rest[0], "G_0"), parseNumber<std::int64_t>(rest[1], "G_1"),
                   {rest.begin() + 2, rest.end()}};
      for (const auto& c : row.cells) {
        if (c == "ERR") continue;
        if (t.kind == PaperTable::Kind::Power) parseEntry(c);
        else parseKList(c);
      }
      t.rows.push_back(std::move(row));
    } else {
      fail("unknown record '" + tag + "'");
    }
  }
  if (!haveTable || !haveColumns) throw std::invalid_argument("table text lacks table/columns records");
  return t;
}

PaperTable readTable(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parseTable(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

void writeFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::vector<PaperTable> tablesFromSweep(const SweepResult& result) {
  const int blockCount = static_cast<int>(coefficientBlocks(result.config.maxAB).size());
  std::vector<PaperTable> power, impossible;
  for (const auto& block : result.blocks) {
    const int pos = static_cast<int>(block.position);
    if (!block.power.empty()) {
      PaperTable t{pos + 1, PaperTable::Kind::Power, block.A, block.B, result.config.qList, block.headerN, {}};
      for (const auto& row : block.power) {
        TableRow r{row.spec.u, row.spec.v, {}};
        for (const auto& cell : row.cells)
          r.cells.push_back(cell.outcome ? renderEntry(cell.outcome->classification) : "ERR");
        t.rows.push_back(std::move(r));
      }
      power.push_back(std::move(t));
    }
    if (!block.impossible.empty()) {
      PaperTable t{blockCount + pos + 1, PaperTable::Kind::Impossible, block.A, block.B,
                   result.config.impossibilityQ, {}, {}};
      for (const auto& row : block.impossible) {
        const bool any = std::any_of(row.kLists.begin(), row.kLists.end(), [](const auto& l) { return !l.empty(); });
        if (!any && row.errors.empty()) continue;
        TableRow r{row.spec.u, row.spec.v, {}};
        for (const auto& l : row.kLists) r.cells.push_back(row.errors.empty() ? renderKList(l) : "ERR");
        t.rows.push_back(std::move(r));
      }
      impossible.push_back(std::move(t));
    }
  }
  power.insert(power.end(), impossible.begin(), impossible.end());
  return power;
}

std::vector<CellDiff> diffTables(const PaperTable& expected, const PaperTable& actual) {
  std::vector<CellDiff> diffs;
  const int n = expected.number;
  if (expected.kind != actual.kind || expected.A != actual.A || expected.B != actual.B) {
    diffs.push_back({n, 0, 0, "table", std::to_string(expected.A) + "," + std::to_string(expected.B),
                     std::to_string(actual.A) + "," + std::to_string(actual.B)});
    return diffs;
  }
  auto columnIndex = [](const PaperTable& t, std::uint64_t q) -> std::optional<std::size_t> {
    auto it = std::find(t.columns.begin(), t.columns.end(), q);
    if (it == t.columns.end()) return std::nullopt;
    return static_cast<std::size_t>(it - t.columns.begin());
  };
  const bool power = expected.kind == PaperTable::Kind::Power;

  for (std::size_t i = 0; i < expected.moduli.size(); ++i) {
    const auto q = expected.columns[i];
    const auto j = columnIndex(actual, q);
    auto show = [](const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
    const std::string got = j && *j < actual.moduli.size() ? show(actual.moduli[*j]) : "absent";
    if (got != show(expected.moduli[i])) diffs.push_back({n, 0, 0, "N_" + std::to_string(q), show(expected.moduli[i]), got});
  }

  using Key = std::pair<std::int64_t, std::int64_t>;
  std::map<Key, const TableRow*> exp, act;
  for (const auto& r : expected.rows) exp[{r.g0, r.g1}] = &r;
  for (const auto& r : actual.rows) act[{r.g0, r.g1}] = &r;
  std::map<Key, bool> keys;
  for (const auto& [k, _] : exp) keys[k] = true;
  for (const auto& [k, _] : act) keys[k] = true;

  for (const auto& [key, _] : keys) {
    const TableRow* e = exp.count(key) ? exp[key] : nullptr;
    const TableRow* a = act.count(key) ? act[key] : nullptr;
    if (power && (!e || !a)) {
      diffs.push_back({n, key.first, key.second, "row", e ? "present" : "absent", a ? "present" : "absent"});
      continue;
    }
    for (std::size_t i = 0; i < expected.columns.size(); ++i) {
      const auto q = expected.columns[i];
      const std::string want = e ? e->cells[i] : "-";
      std::string got = "-";
      if (a) {
        const auto j = columnIndex(actual, q);
        got = j ? a->cells[*j] : "absent";
      }
      if (want != got) diffs.push_back({n, key.first, key.second, "q=" + std::to_string(q), want, got});
    }
  }
  return diffs;
}

std::string renderDiffs(const std::vector<CellDiff>& diffs) {
  std::ostringstream out;
  for (const auto& d : diffs)
    out << "table " << d.table << " (" << d.g0 << "," << d.g1 << ") " << d.column << ": expected " << d.expected
        << ", got " << d.actual << '\n';
  return out.str();
}

json toJson(const SievePrime& p) {
  return {{"prime", p.prime},
          {"period", p.period},
          {"piEll", p.record.piEll},
          {"ordM", p.record.ordM},
          {"boundCase", std::string(to_string(p.record.boundCase))},
          {"nBefore", p.nBefore},
          {"nAfter", p.nAfter},
          {"survivorsBefore", p.survivorsBefore},
          {"survivorsAfter", p.survivorsAfter}};
}

json toJson(const SieveOutcome& o, bool withResidues) {
  json trace = json::array();
  for (const auto& p : o.trace) trace.push_back(toJson(p));
  json j = {{"modulus", o.modulus},
            {"count", o.residues.size()},
            {"classification",
             {{"kind", to_string(o.classification.kind)},
              {"representative", o.classification.representative},
              {"count", o.classification.count},
              {"entry", renderEntry(o.classification)}}},
            {"stoppedEarly", o.stoppedEarly},
            {"emptiedBy", o.emptiedBy ? json(*o.emptiedBy) : json(nullptr)},
            {"trace", trace}};
  if (withResidues) j["residues"] = o.residues;
  return j;
}

json toJson(const PeriodRecord& r) {
  return {{"prime", r.prime},
          {"piEll", r.piEll},
          {"ordM", r.ordM},
          {"boundCase", std::string(to_string(r.boundCase))},
          {"bound", boundValue(r.boundCase, r.prime)},
          {"legendreDelta", r.legendreDelta},
          {"deltaSquare", r.deltaSquare}};
}

json toJson(const OracleHit& h) {
  return {{"n", h.n}, {"x", h.x.str()}, {"g", h.gValue.str()}, {"trivial", h.trivial}};
}

json toJson(const SoundnessVerdict& v) {
  json violations = json::array();
  for (const auto& x : v.violations) violations.push_back({{"n", x.hit.n}, {"residue", x.residue}, {"x", x.hit.x.str()}});
  return {{"sound", v.sound()}, {"modulus", v.modulus}, {"hitsChecked", v.hitsChecked}, {"violations", violations}};
}

json toJson(const DensityReport& d) {
  return {{"q", d.q},
          {"bound", d.bound},
          {"primes", d.primes},
          {"candidates", d.candidates},
          {"admittedCount", d.admitted.size()},
          {"fraction", d.fraction()},
          {"admitted", d.admitted},
          {"rejected", d.rejected}};
}

json toJson(const SweepResult& r) {
  const auto& c = r.config;
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json header = json::object();
    for (std::size_t i = 0; i < b.headerN.size(); ++i)
      header[std::to_string(c.qList[i])] = b.headerN[i] ? json(*b.headerN[i]) : json(nullptr);
    json power = json::array();
    for (const auto& row : b.power) {
      json cells = json::array();
      for (std::size_t i = 0; i < row.cells.size(); ++i) {
        const auto& cell = row.cells[i];
        json jc = {{"q", c.qList[i]}};
        if (cell.outcome) {
          jc["entry"] = renderEntry(cell.outcome->classification);
          jc["outcome"] = toJson(*cell.outcome, false);
        } else {
          jc["error"] = cell.error;
        }
        cells.push_back(jc);
      }
      power.push_back({{"g0", row.spec.u}, {"g1", row.spec.v}, {"cells", cells}});
    }
    json impossible = json::array();
    for (const auto& row : b.impossible) {
      json lists = json::object();
      for (std::size_t i = 0; i < row.kLists.size(); ++i) lists[std::to_string(c.impossibilityQ[i])] = row.kLists[i];
      impossible.push_back({{"g0", row.spec.u}, {"g1", row.spec.v}, {"k", lists}, {"errors", row.errors}});
    }
    blocks.push_back({{"A", b.A}, {"B", b.B}, {"moduli", header}, {"power", power}, {"impossible", impossible}});
  }
  return {{"config",
           {{"maxAB", c.maxAB},
            {"maxInit", c.maxInit},
            {"cutoff", c.cutoff},
            {"qList", c.qList},
            {"kRange", {c.kMin, c.kMax}},
            {"impossibilityQ", c.impossibilityQ},
            {"periodSource", c.periodSource == PeriodSource::MatrixOrder ? "order" : "pi"},
            {"admission", c.admission == Admission::SmoothPeriod ? "smooth" : "ratio"},
            {"multipass", c.multipass}}},
          {"blocks", blocks},
          {"errors", r.errors()}};
}

json document(const std::string& kind, json payload) {
  return {{"schema", "powsieve." + kind}, {"schemaVersion", kSchemaVersion}, {kind, std::move(payload)}};
}

std::string delimitedTrace(const SieveOutcome& o) {
  std::ostringstream out;
  out << "prime\tperiod\tpi\tordM\tbound\tnBefore\tnAfter\tsurvivorsBefore\tsurvivorsAfter\n";
  for (const auto& p : o.trace)
    out << p.prime << '\t' << p.period << '\t' << p.record.piEll << '\t' << p.record.ordM << '\t'
        << to_string(p.record.boundCase) << '\t' << p.nBefore << '\t' << p.nAfter << '\t' << p.survivorsBefore
        << '\t' << p.survivorsAfter << '\n';
  return out.str();
}

std::string delimitedSweep(const SweepResult& r) {
  std::ostringstream out;
  out << "record\tA\tB\tg0\tg1\tq\tvalue\tmodulus\n";
  for (const auto& b : r.blocks) {
    for (std::size_t i = 0; i < b.headerN.size(); ++i)
      out << "modulus\t" << b.A << '\t' << b.B << "\t\t\t" << r.config.qList[i] << '\t'
          << (b.headerN[i] ? std::to_string(*b.headerN[i]) : "-") << "\t\n";
    for (const auto& row : b.power)
      for (std::size_t i = 0; i < row.cells.size(); ++i) {
        const auto& cell = row.cells[i];
        out << "power\t" << b.A << '\t' << b.B << '\t' << row.spec.u << '\t' << row.spec.v << '\t'
            << r.config.qList[i] << '\t' << (cell.outcome ? renderEntry(cell.outcome->classification) : "ERR") << '\t'
            << (cell.outcome ? std::to_string(cell.outcome->modulus) : "") << '\n';
      }
    for (const auto& row : b.impossible)
      for (std::size_t i = 0; i < row.kLists.size(); ++i)
        out << "impossible\t" << b.A << '\t' << b.B << '\t' << row.spec.u << '\t' << row.spec.v << '\t'
            << r.config.impossibilityQ[i] << '\t' << renderKList(row.kLists[i]) << "\t\n";
  }
  return out.str();
}

std::string traceSummary(const SieveOutcome& o) {
  std::ostringstream out;
  out << "N=" << o.modulus << " |J|=" << o.residues.size() << " entry=" << renderEntry(o.classification);
  if (o.emptiedBy) out << " emptied at l=" << *o.emptiedBy;
  out << '\n';
  for (const auto& p : o.trace)
    out << "  l=" << p.prime << " period=" << p.period << " (pi=" << p.record.piEll << ", ord=" << p.record.ordM
        << ") n " << p.nBefore << " -> " << p.nAfter << ", |J| " << p.survivorsBefore << " -> " << p.survivorsAfter
        << '\n';
  return out.str();
}

}  // namespace powsieve
