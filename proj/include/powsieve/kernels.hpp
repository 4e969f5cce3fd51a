#pragma once
// Data-parallel inner loops of the sieve. Each kernel has a scalar reference
// implementation and, on x86-64 builds, an AVX2 variant; the free functions at
// the bottom dispatch at runtime. Variants must produce identical output.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace powsieve::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Best ISA supported by this CPU and build. POWSIEVE_ISA=scalar in the
/// environment forces the scalar path.
Isa detectIsa();
/// The ISA used by the dispatching entry points.
Isa activeIsa();
/// Override the dispatcher (tests, benchmarks). Requesting an unsupported ISA
/// falls back to Scalar; the ISA actually installed is returned.
Isa setActiveIsa(Isa isa);
bool isaSupported(Isa isa);

/// Extra readable bytes a mask passed to liftFilter must carry past its logical
/// end (vector gathers read 4 bytes at a time).
inline constexpr std::size_t kMaskPadding = 4;

/// out[i] = 1 iff y = residues[i] * multiplier mod prime is 0 or y^exponent == 1.
/// Requires prime < 2^32, residues[i] < prime, out.size() >= residues.size().
struct PowerMaskArgs {
  std::span<const std::uint32_t> residues;
  std::uint32_t multiplier;
  std::uint32_t prime;
  std::uint64_t exponent;
};

/// For j in [0, ratio), for each current[i] (ascending, < modulus), candidate
/// c = current[i] + j*modulus survives iff mask[c mod period] != 0. Survivors
/// are appended to `out` in ascending order. `mask` must have period +
/// kMaskPadding readable bytes; period < 2^31.
struct LiftArgs {
  std::span<const std::uint64_t> current;
  std::uint64_t modulus;
  std::uint64_t ratio;
  std::span<const std::uint8_t> mask;
  std::uint64_t period;
};

namespace scalar {
void powerResidueMask(const PowerMaskArgs& args, std::span<std::uint8_t> out);
void liftFilter(const LiftArgs& args, std::vector<std::uint64_t>& out);
}  // namespace scalar

#if defined(POWSIEVE_WITH_AVX2)
namespace avx2 {
void powerResidueMask(const PowerMaskArgs& args, std::span<std::uint8_t> out);
void liftFilter(const LiftArgs& args, std::vector<std::uint64_t>& out);
}  // namespace avx2
#endif

void powerResidueMask(const PowerMaskArgs& args, std::span<std::uint8_t> out);
void liftFilter(const LiftArgs& args, std::vector<std::uint64_t>& out);

}  // namespace powsieve::kernels
