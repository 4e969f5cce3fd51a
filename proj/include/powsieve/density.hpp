#pragma once
// Empirical count of primes whose period is q-smooth, i.e. the primes the
// default admission rule accepts.

#include <cstdint>
#include <vector>

#include "powsieve/sieve.hpp"

namespace powsieve {

struct DensityReport {
  std::uint64_t q = 0;
  std::uint64_t bound = 0;
  std::uint64_t primes = 0;      // all primes <= bound
  std::uint64_t candidates = 0;  // l = 1 mod q, l not dividing B
  std::vector<std::uint64_t> admitted;
  std::vector<std::uint64_t> rejected;

  double fraction() const { return candidates ? static_cast<double>(admitted.size()) / candidates : 0.0; }
};

DensityReport densityScan(const RecurrenceSpec& spec, std::uint64_t q, std::uint64_t bound,
                          PeriodSource source = PeriodSource::MatrixOrder, const OrderLookup& orders = {});

}  // namespace powsieve
