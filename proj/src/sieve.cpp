#include "powsieve/sieve.hpp"

#include <algorithm>
#include <limits>

#include "powsieve/kernels.hpp"
#include "powsieve/primes.hpp"

namespace powsieve {

void EquationSpec::validate() const {
  if (k == 0) throw std::invalid_argument("equation requires k != 0");
  if (q < 3 || !isPrime(q)) throw std::invalid_argument("exponent q must be a prime >= 3, got " + std::to_string(q));
}

std::string to_string(Classification::Kind kind) {
  switch (kind) {
    case Classification::Kind::Empty: return "empty";
    case Classification::Kind::Single: return "single";
    case Classification::Kind::FiberClass: return "fiber";
    case Classification::Kind::Scattered: return "scattered";
  }
  return "?";
}

bool isSmooth(std::uint64_t n, std::uint64_t bound) { return largestPrimeFactor(n) <= bound; }

namespace {

struct Candidate {
  std::uint64_t prime;
  OrderRecord order;
};

std::vector<Candidate> candidates(const RecurrenceSpec& spec, const EquationSpec& eq, const SieveOptions& options) {
  std::vector<Candidate> out;
  for (std::uint64_t p : primesUpTo(options.cutoff)) {
    if (p % eq.q != 1) continue;
    if (reduce(spec.B, p) == 0 || reduce(eq.k, p) == 0) continue;
    OrderRecord order = options.orders ? options.orders(spec, p) : orderRecord(spec, p);
    out.push_back({p, order});
  }
  return out;
}

SievePrime makePrime(const RecurrenceSpec& spec, const Candidate& c, std::uint64_t period, PeriodRecord rec,
                     std::uint64_t nBefore) {
  SievePrime sp;
  sp.prime = c.prime;
  sp.period = period;
  sp.record = rec;
  sp.nBefore = nBefore;
  sp.nAfter = checkedLcm(nBefore, period);
  (void)spec;
  return sp;
}

// Table-driven filtering pays off once the candidates cover a fair share of
// one period; past that the per-index matrix power is cheaper.
constexpr std::uint64_t kTableLimit = 1ULL << 26;
constexpr std::uint64_t kTableDensity = 64;
constexpr std::uint64_t kMaxCandidates = 1ULL << 31;

}  // namespace

std::vector<SievePrime> selectPrimes(const RecurrenceSpec& spec, const EquationSpec& eq,
                                     const SieveOptions& options) {
  spec.validate();
  eq.validate();
  if (options.cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");

  const auto pool = candidates(spec, eq, options);
  std::vector<SievePrime> accepted;
  std::uint64_t n = 1;

  // pi_l is needed both as a possible period source and for the residue table.
  auto periodOf = [&](const Candidate& c, PeriodRecord& rec) {
    rec = minimalPeriod(spec, c.order);
    return options.periodSource == PeriodSource::MatrixOrder ? rec.ordM : rec.piEll;
  };

  if (options.admission == Admission::SmoothPeriod) {
    for (const auto& c : pool) {
      if (options.periodSource == PeriodSource::MatrixOrder && !isSmooth(c.order.ordM, eq.q)) continue;
      PeriodRecord rec;
      const std::uint64_t period = periodOf(c, rec);
      if (!isSmooth(period, eq.q)) continue;
      accepted.push_back(makePrime(spec, c, period, rec, n));
      n = accepted.back().nAfter;
    }
    return accepted;
  }

  std::vector<bool> taken(pool.size(), false);
  for (bool progress = true; progress;) {
    progress = false;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      PeriodRecord rec;
      const std::uint64_t period = periodOf(pool[i], rec);
      const bool first = accepted.empty();
      if (!first && checkedLcm(n, period) / n >= eq.q) continue;
      accepted.push_back(makePrime(spec, pool[i], period, rec, n));
      n = accepted.back().nAfter;
      taken[i] = true;
      progress = true;
    }
    if (!options.multipass) break;
  }
  return accepted;
}

std::vector<std::uint64_t> liftAndFilter(const std::vector<std::uint64_t>& current, const SievePrime& next,
                                         const RecurrenceSpec& spec, const EquationSpec& eq) {
  if (current.empty()) return {};
  if (next.nBefore == 0 || next.nAfter % next.nBefore != 0)
    throw std::invalid_argument("liftAndFilter: new modulus must be a multiple of the old one");
  const std::uint64_t pi = next.record.piEll;
  if (pi == 0 || next.nAfter % pi != 0)
    throw std::invalid_argument("liftAndFilter: period must divide the new modulus");

  const std::uint64_t ratio = next.nAfter / next.nBefore;
  if (ratio > kMaxCandidates / current.size()) throw std::length_error("liftAndFilter: too many candidates");
  const std::uint64_t candidateCount = current.size() * ratio;

  const std::uint64_t prime = next.prime;
  const std::uint64_t kInv = invmod(reduce(eq.k, prime), prime);
  const std::uint64_t exponent = (prime - 1) / eq.q;

  std::vector<std::uint64_t> out;
  if (pi <= kTableLimit && pi <= kTableDensity * candidateCount) {
    const auto table = reducedTermTable(spec, prime, static_cast<std::size_t>(pi));
    std::vector<std::uint8_t> mask(pi + kernels::kMaskPadding, 0);
    kernels::powerResidueMask({table, static_cast<std::uint32_t>(kInv), static_cast<std::uint32_t>(prime), exponent},
                              std::span<std::uint8_t>(mask).first(pi));
    kernels::liftFilter({current, next.nBefore, ratio, mask, pi}, out);
    return out;
  }
  for (std::uint64_t j = 0; j < ratio; ++j) {
    for (std::uint64_t a : current) {
      const std::uint64_t c = a + j * next.nBefore;
      const std::uint64_t g = reducedTerm(spec, prime, c % pi);
      if (qthPowerResidue(mulmod(g, kInv, prime), prime, eq.q)) out.push_back(c);
    }
  }
  return out;
}

std::vector<std::uint64_t> initialResidues(const RecurrenceSpec& spec, const EquationSpec& eq,
                                           const SievePrime& first) {
  SievePrime head = first;
  head.nBefore = 1;
  return liftAndFilter({0}, head, spec, eq);
}

SieveOutcome runSieve(const RecurrenceSpec& spec, const EquationSpec& eq, const SieveOptions& options) {
  SieveOutcome outcome;
  auto primes = selectPrimes(spec, eq, options);
  if (primes.empty())
    throw NoQualifyingPrimes("no prime <= " + std::to_string(options.cutoff) + " qualifies for " +
                             to_string(spec) + ", q=" + std::to_string(eq.q) + ", k=" + std::to_string(eq.k));
  std::vector<std::uint64_t> current{0};
  for (auto& sp : primes) {
    sp.survivorsBefore = current.size();
    current = liftAndFilter(current, sp, spec, eq);
    sp.survivorsAfter = current.size();
    outcome.trace.push_back(sp);
    outcome.modulus = sp.nAfter;
    if (current.empty()) {
      outcome.stoppedEarly = true;
      outcome.emptiedBy = sp.prime;
      break;
    }
  }
  outcome.residues = std::move(current);
  outcome.classification = classifyOutcome(outcome.modulus, outcome.residues);
  return outcome;
}

namespace {

std::int64_t leastAbsolute(std::uint64_t a, std::uint64_t m) {
  if (a > m / 2) return -static_cast<std::int64_t>(m - a);
  return static_cast<std::int64_t>(a);
}

}  // namespace

Classification classifyOutcome(std::uint64_t modulus, const std::vector<std::uint64_t>& residues) {
  if (modulus == 0) throw std::invalid_argument("classifyOutcome: modulus must be positive");
  std::vector<std::uint64_t> sorted = residues;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("classifyOutcome: residues must be distinct");
  if (!sorted.empty() && sorted.back() >= modulus)
    throw std::out_of_range("classifyOutcome: residue " + std::to_string(sorted.back()) + " not below modulus " +
                            std::to_string(modulus));

  using Kind = Classification::Kind;
  const std::uint64_t m = sorted.size();
  if (m == 0) return {Kind::Empty, 0, 0};
  if (m == 1) return {Kind::Single, leastAbsolute(sorted[0], modulus), 1};
  if (modulus % m == 0) {
    const std::uint64_t stride = modulus / m;
    const std::uint64_t a = sorted[0] % stride;
    // m distinct values in one class mod N/m exhaust that class's fiber.
    if (std::all_of(sorted.begin(), sorted.end(), [&](std::uint64_t x) { return x % stride == a; }))
      return {Kind::FiberClass, leastAbsolute(a, stride), m};
  }
  return {Kind::Scattered, 0, m};
}

}  // namespace powsieve
