#include "powsieve/kernels.hpp"

#include <stdexcept>

namespace powsieve::kernels::scalar {

namespace {

inline std::uint64_t mulmod32(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

}  // namespace

void powerResidueMask(const PowerMaskArgs& args, std::span<std::uint8_t> out) {
  if (out.size() < args.residues.size()) throw std::invalid_argument("powerResidueMask: output too small");
  const std::uint64_t p = args.prime;
  for (std::size_t i = 0; i < args.residues.size(); ++i) {
    const std::uint64_t y = mulmod32(args.residues[i], args.multiplier, p);
    if (y == 0) {
      out[i] = 1;
      continue;
    }
    std::uint64_t base = y, acc = 1 % p, e = args.exponent;
    while (e) {
      if (e & 1) acc = mulmod32(acc, base, p);
      base = mulmod32(base, base, p);
      e >>= 1;
    }
    out[i] = acc == 1 % p ? 1 : 0;
  }
}

void liftFilter(const LiftArgs& args, std::vector<std::uint64_t>& out) {
  const std::uint64_t period = args.period;
  const std::uint64_t step = args.modulus % period;
  std::vector<std::uint64_t> idx(args.current.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = args.current[i] % period;
  for (std::uint64_t j = 0; j < args.ratio; ++j) {
    const std::uint64_t offset = j * args.modulus;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (args.mask[idx[i]]) out.push_back(args.current[i] + offset);
      idx[i] += step;
      if (idx[i] >= period) idx[i] -= period;
    }
  }
}

}  // namespace powsieve::kernels::scalar
