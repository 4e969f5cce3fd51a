// Compiled with -mavx2; only reached through the dispatcher after a CPUID check.
#include <immintrin.h>

#include <stdexcept>

#include "powsieve/kernels.hpp"

namespace powsieve::kernels::avx2 {

namespace {

// x mod p for x < 2^32 in each lane; barrett = floor(2^32 / p). The quotient
// estimate is off by at most one, fixed by a single conditional subtract.
inline __m256i reduceLanes(__m256i x, __m256i barrett, __m256i p) {
  const __m256i hiMask = _mm256_set1_epi64x(static_cast<long long>(0xFFFFFFFF00000000ULL));
  const __m256i even = _mm256_mul_epu32(x, barrett);
  const __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32), barrett);
  const __m256i q = _mm256_or_si256(_mm256_srli_epi64(even, 32), _mm256_and_si256(odd, hiMask));
  const __m256i r = _mm256_sub_epi32(x, _mm256_mullo_epi32(q, p));
  return _mm256_min_epu32(r, _mm256_sub_epi32(r, p));
}

// Operands < p < 2^16, so the 32-bit low product is exact.
inline __m256i mulmodLanes(__m256i a, __m256i b, __m256i barrett, __m256i p) {
  return reduceLanes(_mm256_mullo_epi32(a, b), barrett, p);
}

}  // namespace

void powerResidueMask(const PowerMaskArgs& args, std::span<std::uint8_t> out) {
  if (out.size() < args.residues.size()) throw std::invalid_argument("powerResidueMask: output too small");
  if (args.prime >= (1u << 16) || args.prime < 2) {
    scalar::powerResidueMask(args, out);
    return;
  }
  const std::size_t n = args.residues.size();
  const __m256i p = _mm256_set1_epi32(static_cast<int>(args.prime));
  const __m256i barrett = _mm256_set1_epi32(static_cast<int>((1ULL << 32) / args.prime));
  const __m256i mult = _mm256_set1_epi32(static_cast<int>(args.multiplier % args.prime));
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i zero = _mm256_setzero_si256();

  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i r = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(args.residues.data() + i));
    const __m256i y = mulmodLanes(r, mult, barrett, p);
    __m256i base = y, acc = one;
    for (std::uint64_t e = args.exponent; e; e >>= 1) {
      if (e & 1) acc = mulmodLanes(acc, base, barrett, p);
      base = mulmodLanes(base, base, barrett, p);
    }
    const __m256i hit = _mm256_or_si256(_mm256_cmpeq_epi32(y, zero), _mm256_cmpeq_epi32(acc, one));
    const int bits = _mm256_movemask_ps(_mm256_castsi256_ps(hit));
    for (int lane = 0; lane < 8; ++lane) out[i + lane] = static_cast<std::uint8_t>((bits >> lane) & 1);
  }
  if (i < n) {
    PowerMaskArgs tail = args;
    tail.residues = args.residues.subspan(i);
    scalar::powerResidueMask(tail, out.subspan(i));
  }
}

void liftFilter(const LiftArgs& args, std::vector<std::uint64_t>& out) {
  if (args.period >= (1ULL << 31) || args.mask.size() < args.period + kMaskPadding) {
    scalar::liftFilter(args, out);
    return;
  }
  const std::size_t n = args.current.size();
  const std::size_t blocks = n / 8;
  const auto period32 = static_cast<std::uint32_t>(args.period);
  const auto step32 = static_cast<std::uint32_t>(args.modulus % args.period);

  std::vector<std::uint32_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<std::uint32_t>(args.current[i] % args.period);

  const __m256i step = _mm256_set1_epi32(static_cast<int>(step32));
  const __m256i period = _mm256_set1_epi32(static_cast<int>(period32));
  const __m256i byteMask = _mm256_set1_epi32(0xFF);
  const __m256i zero = _mm256_setzero_si256();
  const int* maskBase = reinterpret_cast<const int*>(args.mask.data());

  for (std::uint64_t j = 0; j < args.ratio; ++j) {
    const std::uint64_t offset = j * args.modulus;
    for (std::size_t b = 0; b < blocks; ++b) {
      auto* slot = reinterpret_cast<__m256i*>(idx.data() + 8 * b);
      __m256i cur = _mm256_loadu_si256(slot);
      const __m256i g = _mm256_and_si256(_mm256_i32gather_epi32(maskBase, cur, 1), byteMask);
      int keep = ~_mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpeq_epi32(g, zero))) & 0xFF;
      while (keep) {
        const int lane = __builtin_ctz(static_cast<unsigned>(keep));
        out.push_back(args.current[8 * b + lane] + offset);
        keep &= keep - 1;
      }
      cur = _mm256_add_epi32(cur, step);
      cur = _mm256_min_epu32(cur, _mm256_sub_epi32(cur, period));
      _mm256_storeu_si256(slot, cur);
    }
    for (std::size_t i = 8 * blocks; i < n; ++i) {
      if (args.mask[idx[i]]) out.push_back(args.current[i] + offset);
      idx[i] += step32;
      if (idx[i] >= period32) idx[i] -= period32;
    }
  }
}

}  // namespace powsieve::kernels::avx2
