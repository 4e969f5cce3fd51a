#include <atomic>
#include <cstdlib>
#include <string>

#include "powsieve/kernels.hpp"

namespace powsieve::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

bool isaSupported(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(POWSIEVE_WITH_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detectIsa() {
  if (const char* forced = std::getenv("POWSIEVE_ISA"); forced && std::string(forced) == "scalar")
    return Isa::Scalar;
  return isaSupported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

namespace {

std::atomic<Isa>& activeSlot() {
  static std::atomic<Isa> slot{detectIsa()};
  return slot;
}

}  // namespace

Isa activeIsa() { return activeSlot().load(std::memory_order_relaxed); }

Isa setActiveIsa(Isa isa) {
  if (!isaSupported(isa)) isa = Isa::Scalar;
  activeSlot().store(isa, std::memory_order_relaxed);
  return isa;
}

void powerResidueMask(const PowerMaskArgs& args, std::span<std::uint8_t> out) {
#if defined(POWSIEVE_WITH_AVX2)
  if (activeIsa() == Isa::Avx2) return avx2::powerResidueMask(args, out);
#endif
  scalar::powerResidueMask(args, out);
}

void liftFilter(const LiftArgs& args, std::vector<std::uint64_t>& out) {
#if defined(POWSIEVE_WITH_AVX2)
  if (activeIsa() == Isa::Avx2) return avx2::liftFilter(args, out);
#endif
  scalar::liftFilter(args, out);
}

}  // namespace powsieve::kernels
