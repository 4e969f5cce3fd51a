#include "powsieve/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "powsieve/primes.hpp"

namespace powsieve {

void SweepConfig::validate() const {
  if (maxAB < 2) throw std::invalid_argument("maxAB must be >= 2");
  if (maxInit < 1) throw std::invalid_argument("maxInit must be >= 1");
  if (cutoff < 2) throw std::invalid_argument("cutoff must be >= 2");
  if (kMin < 1 || kMax < kMin) throw std::invalid_argument("k range must satisfy 1 <= kMin <= kMax");
  if (jobs == 0) throw std::invalid_argument("jobs must be >= 1");
  for (const auto* list : {&qList, &impossibilityQ})
    for (std::uint64_t q : *list) EquationSpec{1, q}.validate();
}

SieveOptions SweepConfig::sieveOptions() const {
  SieveOptions o;
  o.cutoff = cutoff;
  o.periodSource = periodSource;
  o.admission = admission;
  o.multipass = multipass;
  return o;
}

std::vector<std::pair<std::int64_t, std::int64_t>> coefficientBlocks(std::int64_t maxAB) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (std::int64_t s = 2; s <= maxAB; ++s)
    for (std::int64_t a = 1; a < s; ++a) out.emplace_back(a, s - a);
  return out;
}

std::vector<std::pair<std::int64_t, std::int64_t>> gridChain(const RecurrenceSpec& spec, std::int64_t maxInit) {
  using Pair = std::pair<std::int64_t, std::int64_t>;
  std::vector<Pair> chain{{spec.u, spec.v}};
  auto seen = [&](const Pair& p) { return std::find(chain.begin(), chain.end(), p) != chain.end(); };

  for (Pair cur = chain.front();;) {
    const std::int64_t num = cur.second - spec.A * cur.first;
    if (num % spec.B != 0) break;
    const std::int64_t prev = num / spec.B;
    if (prev < 0 || prev > maxInit) break;
    const Pair p{prev, cur.first};
    if (seen(p)) break;
    chain.push_back(p);
    cur = p;
  }
  for (Pair cur = chain.front();;) {
    const std::int64_t next = spec.A * cur.second + spec.B * cur.first;
    if (next < 0 || next > maxInit) break;
    const Pair p{cur.second, next};
    if (seen(p)) break;
    chain.push_back(p);
    cur = p;
  }
  return chain;
}

std::vector<RecurrenceSpec> enumerateBlock(std::int64_t A, std::int64_t B, std::int64_t maxInit) {
  std::vector<RecurrenceSpec> out;
  for (std::int64_t u = 0; u <= maxInit; ++u) {
    for (std::int64_t v = 0; v <= maxInit; ++v) {
      const RecurrenceSpec spec{A, B, u, v};
      if (spec.trivial() || isPurePowerForm(spec)) continue;
      const auto chain = gridChain(spec, maxInit);
      if (*std::min_element(chain.begin(), chain.end()) == chain.front()) out.push_back(spec);
    }
  }
  return out;
}

std::vector<RecurrenceSpec> enumerateGrid(const SweepConfig& config) {
  std::vector<RecurrenceSpec> out;
  for (auto [a, b] : coefficientBlocks(config.maxAB)) {
    auto block = enumerateBlock(a, b, config.maxInit);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

bool qPowerFree(std::int64_t k, std::uint64_t q) {
  if (k == 0) return false;
  const auto mag = static_cast<std::uint64_t>(std::llabs(k));
  for (const auto& pp : factorize(mag))
    if (pp.exponent >= q) return false;
  return true;
}

std::vector<std::int64_t> qPowerFreeRange(std::int64_t lo, std::int64_t hi, std::uint64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t k = lo; k <= hi; ++k)
    if (qPowerFree(k, q)) out.push_back(k);
  return out;
}

}  // namespace powsieve
