#include "powsieve/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "powsieve/modular.hpp"
#include "powsieve/primes.hpp"

namespace powsieve {

namespace mp = boost::multiprecision;

QthRoot integerQthRoot(const BigInt& y, unsigned q) {
  if (y < 0) throw std::invalid_argument("integerQthRoot: negative argument");
  if (q < 2) throw std::invalid_argument("integerQthRoot: exponent must be >= 2");
  if (y < 2) return {y, true};

  const unsigned bits = static_cast<unsigned>(mp::msb(y)) + 1;
  BigInt x = BigInt(1) << ((bits + q - 1) / q);  // > root
  for (;;) {
    BigInt next = ((q - 1) * x + y / mp::pow(x, q - 1)) / q;
    if (next >= x) break;
    x = std::move(next);
  }
  return {x, mp::pow(x, q) == y};
}

namespace {

std::vector<std::uint64_t> filterPrimes(std::uint64_t q, std::size_t count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2 * q + 1; out.size() < count; p += 2 * q)
    if (isPrime(p)) out.push_back(p);
  return out;
}

}  // namespace

std::vector<OracleHit> findPowerMultiples(const std::vector<BigInt>& terms, const EquationSpec& eq) {
  eq.validate();
  const unsigned q = static_cast<unsigned>(eq.q);
  const BigInt k = eq.k;
  // Cheap necessary conditions before the exact root: y must be a q-th power
  // residue modulo a few primes = 1 mod q.
  const auto sieve = filterPrimes(eq.q, 6);

  std::vector<OracleHit> hits;
  for (std::size_t n = 0; n < terms.size(); ++n) {
    const BigInt& g = terms[n];
    if (g == 0) {
      hits.push_back({n, 0, g, true});
      continue;
    }
    if (g % k != 0) continue;
    BigInt y = g / k;
    const bool negative = y < 0;
    if (negative) y = -y;
    const bool plausible = std::all_of(sieve.begin(), sieve.end(), [&](std::uint64_t p) {
      return qthPowerResidue(static_cast<std::uint64_t>(y % p), p, eq.q);
    });
    if (!plausible) continue;
    auto [root, exact] = integerQthRoot(y, q);
    if (!exact) continue;
    const bool trivial = root <= 1;
    hits.push_back({n, negative ? BigInt(-root) : root, g, trivial});
  }
  return hits;
}

std::vector<OracleHit> findPowerMultiples(const RecurrenceSpec& spec, const EquationSpec& eq, std::uint64_t nMax) {
  return findPowerMultiples(forwardTerms(spec, static_cast<std::size_t>(nMax) + 1), eq);
}

SoundnessVerdict certifySoundness(const std::vector<OracleHit>& hits, const SieveOutcome& outcome) {
  std::vector<std::uint64_t> residues = outcome.residues;
  if (!std::is_sorted(residues.begin(), residues.end())) std::sort(residues.begin(), residues.end());

  SoundnessVerdict verdict;
  verdict.modulus = outcome.modulus;
  for (const auto& hit : hits) {
    ++verdict.hitsChecked;
    const std::uint64_t r = hit.n % outcome.modulus;
    if (!std::binary_search(residues.begin(), residues.end(), r)) verdict.violations.push_back({hit, r});
  }
  return verdict;
}

SoundnessVerdict certifySoundness(const RecurrenceSpec& spec, const EquationSpec& eq, const SieveOutcome& outcome,
                                  std::uint64_t nMax) {
  return certifySoundness(findPowerMultiples(spec, eq, nMax), outcome);
}

}  // namespace powsieve
