#include "powsieve/density.hpp"

#include "powsieve/primes.hpp"

namespace powsieve {

DensityReport densityScan(const RecurrenceSpec& spec, std::uint64_t q, std::uint64_t bound, PeriodSource source,
                          const OrderLookup& orders) {
  spec.validate();
  EquationSpec{1, q}.validate();
  DensityReport report;
  report.q = q;
  report.bound = bound;
  if (bound < 2) return report;
  for (std::uint64_t p : primesUpTo(bound)) {
    ++report.primes;
    if (p % q != 1 || reduce(spec.B, p) == 0) continue;
    ++report.candidates;
    const OrderRecord order = orders ? orders(spec, p) : orderRecord(spec, p);
    const std::uint64_t period = source == PeriodSource::MatrixOrder ? order.ordM : minimalPeriod(spec, order).piEll;
    (isSmooth(period, q) ? report.admitted : report.rejected).push_back(p);
  }
  return report;
}

}  // namespace powsieve
