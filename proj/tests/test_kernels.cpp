#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "powsieve/kernels.hpp"
#include "powsieve/primes.hpp"

using namespace powsieve;
using namespace powsieve::kernels;

namespace {

std::vector<std::uint8_t> naiveMask(const std::vector<std::uint32_t>& r, std::uint32_t mult, std::uint32_t p,
                                    std::uint64_t e) {
  std::vector<std::uint8_t> out;
  for (auto x : r) {
    const std::uint64_t y = std::uint64_t{x} * mult % p;
    std::uint64_t acc = 1 % p;
    for (std::uint64_t i = 0; i < e; ++i) acc = acc * y % p;
    out.push_back(y == 0 || acc == 1 % p);
  }
  return out;
}

std::vector<std::uint64_t> naiveLift(const std::vector<std::uint64_t>& cur, std::uint64_t modulus, std::uint64_t ratio,
                                     const std::vector<std::uint8_t>& mask, std::uint64_t period) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t j = 0; j < ratio; ++j)
    for (auto a : cur)
      if (mask[(a + j * modulus) % period]) out.push_back(a + j * modulus);
  return out;
}

std::uint32_t randomPrime(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  for (;;) {
    const auto p = static_cast<std::uint32_t>(lo + rng() % (hi - lo));
    if (isPrime(p)) return p;
  }
}

struct Restore {
  Isa saved = activeIsa();
  ~Restore() { setActiveIsa(saved); }
};

}  // namespace

TEST_CASE("scalar powerResidueMask matches naive evaluation") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t p = randomPrime(rng, 3, 400);
    std::vector<std::uint32_t> r(rng() % 70);
    for (auto& x : r) x = static_cast<std::uint32_t>(rng() % p);
    const auto mult = static_cast<std::uint32_t>(1 + rng() % (p - 1));
    const std::uint64_t e = rng() % 40;
    std::vector<std::uint8_t> out(r.size());
    scalar::powerResidueMask({r, mult, p, e}, out);
    CHECK(out == naiveMask(r, mult, p, e));
  }
}

TEST_CASE("scalar liftFilter matches naive lift") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t modulus = 1 + rng() % 50, ratio = 1 + rng() % 9;
    std::vector<std::uint64_t> period_divs;
    for (auto d : divisors(modulus * ratio)) period_divs.push_back(d);
    const std::uint64_t period = period_divs[rng() % period_divs.size()];
    std::vector<std::uint64_t> cur;
    for (std::uint64_t a = 0; a < modulus; ++a)
      if (rng() % 3 == 0) cur.push_back(a);
    std::vector<std::uint8_t> mask(period + kMaskPadding);
    for (std::uint64_t i = 0; i < period; ++i) mask[i] = rng() % 2;
    std::vector<std::uint64_t> out;
    scalar::liftFilter({cur, modulus, ratio, mask, period}, out);
    CHECK(out == naiveLift(cur, modulus, ratio, mask, period));
    CHECK(std::is_sorted(out.begin(), out.end()));
  }
}

#if defined(POWSIEVE_WITH_AVX2)

TEST_CASE("avx2 powerResidueMask is identical to scalar") {
  if (!isaSupported(Isa::Avx2)) {
    MESSAGE("CPU lacks AVX2; skipping");
    return;
  }
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    // Mostly below 2^16 (vector path), some above (scalar fallback).
    const std::uint32_t p = trial % 10 == 9 ? randomPrime(rng, 1u << 16, 1u << 20) : randomPrime(rng, 2, 1u << 16);
    std::vector<std::uint32_t> r(rng() % 300);
    for (auto& x : r) x = static_cast<std::uint32_t>(rng() % p);
    const auto mult = static_cast<std::uint32_t>(rng() % p);
    const std::uint64_t e = trial % 3 == 0 ? (p - 1) / 2 : rng() % 5000;
    std::vector<std::uint8_t> a(r.size()), b(r.size());
    scalar::powerResidueMask({r, mult, p, e}, a);
    avx2::powerResidueMask({r, mult, p, e}, b);
    REQUIRE(a == b);
  }
}

TEST_CASE("avx2 liftFilter is identical to scalar") {
  if (!isaSupported(Isa::Avx2)) {
    MESSAGE("CPU lacks AVX2; skipping");
    return;
  }
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 400; ++trial) {
    const std::uint64_t modulus = 1 + rng() % 5000, ratio = 1 + rng() % 12;
    const auto divs = divisors(modulus * ratio);
    const std::uint64_t period = divs[rng() % divs.size()];
    std::vector<std::uint64_t> cur;
    const unsigned density = 1 + rng() % 8;
    for (std::uint64_t a = 0; a < modulus; ++a)
      if (rng() % density == 0) cur.push_back(a);
    std::vector<std::uint8_t> mask(period + kMaskPadding);
    for (std::uint64_t i = 0; i < period; ++i) mask[i] = rng() % 3 == 0;
    // Garbage in the padding must not leak into the result.
    for (std::size_t i = period; i < mask.size(); ++i) mask[i] = 0xFF;
    std::vector<std::uint64_t> a, b;
    scalar::liftFilter({cur, modulus, ratio, mask, period}, a);
    avx2::liftFilter({cur, modulus, ratio, mask, period}, b);
    REQUIRE(a == b);
  }
}

#endif

TEST_CASE("dispatcher honours the selected ISA") {
  Restore restore;
  CHECK(setActiveIsa(Isa::Scalar) == Isa::Scalar);
  CHECK(activeIsa() == Isa::Scalar);
  const Isa got = setActiveIsa(Isa::Avx2);
  CHECK(got == (isaSupported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar));
  CHECK(to_string(Isa::Scalar) == "scalar");
}
