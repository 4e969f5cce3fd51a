#include "powsieve/recurrence.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace powsieve {

void RecurrenceSpec::validate() const {
  if (A == 0 || B == 0) throw std::invalid_argument("recurrence requires A*B != 0: " + to_string(*this));
}

std::string to_string(const RecurrenceSpec& spec) {
  std::ostringstream os;
  os << "(A=" << spec.A << ", B=" << spec.B << ", G0=" << spec.u << ", G1=" << spec.v << ")";
  return os.str();
}

ExtendedTerm::ExtendedTerm(BigInt numerator, unsigned bPower, std::int64_t B)
    : numerator_(std::move(numerator)), bPower_(bPower), B_(B) {
  if (B_ == 0) throw std::invalid_argument("ExtendedTerm requires B != 0");
  reduce();
}

void ExtendedTerm::reduce() {
  const BigInt b = B_;
  while (bPower_ > 0 && numerator_ % b == 0) {
    numerator_ /= b;
    --bPower_;
  }
}

ExtendedTerm ExtendedTerm::plus(const ExtendedTerm& other) const {
  if (B_ != other.B_) throw MismatchedCoefficients("ExtendedTerm::plus across different B");
  const unsigned e = std::max(bPower_, other.bPower_);
  const BigInt b = B_;
  BigInt lhs = numerator_ * boost::multiprecision::pow(b, e - bPower_);
  BigInt rhs = other.numerator_ * boost::multiprecision::pow(b, e - other.bPower_);
  return ExtendedTerm(lhs + rhs, e, B_);
}

ExtendedTerm ExtendedTerm::times(std::int64_t factor) const {
  return ExtendedTerm(numerator_ * factor, bPower_, B_);
}

std::string to_string(const ExtendedTerm& t) {
  std::ostringstream os;
  os << t.numerator();
  if (t.bPower() > 0) os << "/B^" << t.bPower();
  return os.str();
}

BigInt discriminant(const RecurrenceSpec& spec) {
  const BigInt a = spec.A;
  return a * a + 4 * BigInt(spec.B);
}

std::vector<BigInt> forwardTerms(const RecurrenceSpec& spec, std::size_t count) {
  std::vector<BigInt> out;
  out.reserve(count);
  if (count > 0) out.emplace_back(spec.u);
  if (count > 1) out.emplace_back(spec.v);
  while (out.size() < count) {
    const std::size_t n = out.size();
    out.push_back(spec.A * out[n - 1] + spec.B * out[n - 2]);
  }
  return out;
}

std::vector<ExtendedTerm> terms(const RecurrenceSpec& spec, std::int64_t first, std::int64_t last) {
  spec.validate();
  std::vector<ExtendedTerm> out;
  if (last < first) return out;
  out.reserve(static_cast<std::size_t>(last - first + 1));

  // Backward part: (hi, lo) = (G_{m+1}, G_m), both over B^e.
  std::vector<ExtendedTerm> negative;
  if (first < 0) {
    BigInt hi = spec.v, lo = spec.u;
    unsigned e = 0;
    for (std::int64_t m = 0; m > first; --m) {
      BigInt next = hi - spec.A * lo;  // B^(e+1) * G_{m-1}
      hi = lo * spec.B;
      lo = std::move(next);
      ++e;
      if (m - 1 <= last) negative.emplace_back(lo, e, spec.B);
    }
    // negative holds G_{-1}, G_{-2}, ...; emit ascending.
    for (auto it = negative.rbegin(); it != negative.rend(); ++it) out.push_back(*it);
  }
  if (last >= 0) {
    const std::int64_t start = std::max<std::int64_t>(first, 0);
    auto fwd = forwardTerms(spec, static_cast<std::size_t>(last + 1));
    for (std::int64_t n = start; n <= last; ++n) out.emplace_back(fwd[static_cast<std::size_t>(n)], 0, spec.B);
  }
  return out;
}

ExtendedTerm term(const RecurrenceSpec& spec, std::int64_t n) { return terms(spec, n, n).front(); }

PethoReport pethoConditions(const RecurrenceSpec& spec) {
  PethoReport r;
  r.coprimeCoefficients = std::gcd(std::llabs(spec.A), std::llabs(spec.B)) == 1;
  r.nonZeroInitial = !spec.trivial();
  const __int128 a2 = static_cast<__int128>(spec.A) * spec.A;
  r.discriminantCondition = true;
  for (int j = 1; j <= 4; ++j)
    if (a2 == -static_cast<__int128>(j) * spec.B) r.discriminantCondition = false;
  const BigInt u = spec.u, v = spec.v;
  r.nonDegenerateForm = v * v - spec.A * u * v - spec.B * u * u != 0;
  return r;
}

bool isPurePowerForm(const RecurrenceSpec& spec) {
  const BigInt u = spec.u, v = spec.v;
  return v * v == spec.A * u * v + spec.B * u * u;
}

namespace {

// Both sequences are g * mu^n with integer mu (u != 0 forces u | v because mu
// is a root of the monic x^2 - A x - B; u == 0 forces the zero sequence).
std::optional<std::int64_t> shiftPurePower(const RecurrenceSpec& a, const RecurrenceSpec& b,
                                           std::int64_t radius) {
  if (a.trivial() || b.trivial()) {
    if (a.trivial() && b.trivial()) return 0;
    return std::nullopt;
  }
  if (a.v % a.u != 0 || b.v % b.u != 0)
    throw std::domain_error("pure-power comparison needs an integer ratio mu");
  const std::int64_t mu = a.v / a.u;
  if (b.v / b.u != mu) return std::nullopt;
  const BigInt g = a.u, gp = b.u;
  for (std::int64_t step = 0; step <= radius; ++step) {
    for (std::int64_t h : {step, -step}) {
      if (step == 0 && h < 0) continue;
      const BigInt p = boost::multiprecision::pow(BigInt(mu), static_cast<unsigned>(std::llabs(h)));
      if ((h >= 0 && g * p == gp) || (h < 0 && gp * p == g)) return h;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::int64_t> shiftEquivalent(const RecurrenceSpec& a, const RecurrenceSpec& b,
                                            std::int64_t searchRadius) {
  if (a.A != b.A || a.B != b.B)
    throw MismatchedCoefficients("shiftEquivalent: " + to_string(a) + " vs " + to_string(b));
  if (searchRadius < 0) throw std::invalid_argument("searchRadius must be non-negative");
  const bool pa = isPurePowerForm(a), pb = isPurePowerForm(b);
  if (pa || pb) {
    if (pa != pb) return std::nullopt;  // the form is preserved by shifts
    return shiftPurePower(a, b, searchRadius);
  }
  // A shared window of length 2 determines the whole extended sequence.
  const auto window = terms(a, -searchRadius, searchRadius + 1);
  const ExtendedTerm target0(BigInt(b.u), 0, b.B), target1(BigInt(b.v), 0, b.B);
  auto at = [&](std::int64_t n) -> const ExtendedTerm& {
    return window[static_cast<std::size_t>(n + searchRadius)];
  };
  for (std::int64_t step = 0; step <= searchRadius; ++step) {
    for (std::int64_t h : {step, -step}) {
      if (step == 0 && h < 0) continue;
      if (at(h) == target0 && at(h + 1) == target1) return h;
    }
  }
  return std::nullopt;
}

}  // namespace powsieve
