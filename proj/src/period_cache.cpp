#include "powsieve/period_cache.hpp"

#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>

namespace powsieve {

OrderRecord PeriodCache::lookup(const RecurrenceSpec& spec, std::uint64_t prime) {
  const Key key{spec.A, spec.B, prime};
  {
    std::shared_lock lock(mutex_);
    if (auto it = records_.find(key); it != records_.end()) {
      hits_.fetch_add(1, std::memory_order_relaxed);
      return it->second;
    }
  }
  // Computed outside the lock; a concurrent duplicate computes the same value.
  OrderRecord rec = orderRecord(spec, prime);
  misses_.fetch_add(1, std::memory_order_relaxed);
  std::unique_lock lock(mutex_);
  records_.emplace(key, rec);
  return rec;
}

PeriodRecord PeriodCache::period(const RecurrenceSpec& spec, std::uint64_t prime) {
  return minimalPeriod(spec, lookup(spec, prime));
}

OrderLookup PeriodCache::lookupFn() {
  return [this](const RecurrenceSpec& spec, std::uint64_t prime) { return lookup(spec, prime); };
}

std::size_t PeriodCache::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::uint64_t PeriodCache::hits() const { return hits_.load(std::memory_order_relaxed); }

std::uint64_t PeriodCache::misses() const { return misses_.load(std::memory_order_relaxed); }

void PeriodCache::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path.string() + ": cannot open period cache");
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::runtime_error(path.string() + ": missing or unsupported header, expected '" + kHeader + "'");

  std::map<Key, OrderRecord> parsed;
  for (std::size_t lineNo = 2; std::getline(in, line); ++lineNo) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::int64_t a, b;
    std::string bound;
    int legendre, square;
    OrderRecord rec;
    std::string rest;
    if (!(fields >> a >> b >> rec.prime >> rec.ordM >> bound >> legendre >> square) || (fields >> rest) ||
        (square != 0 && square != 1) || legendre < -1 || legendre > 1)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineNo) + ": malformed record");
    try {
      rec.boundCase = parseBoundCase(bound);
    } catch (const std::exception& e) {
      throw std::runtime_error(path.string() + ":" + std::to_string(lineNo) + ": " + e.what());
    }
    rec.legendreDelta = legendre;
    rec.deltaSquare = square == 1;
    parsed[{a, b, rec.prime}] = rec;
  }
  std::unique_lock lock(mutex_);
  records_.merge(parsed);
}

void PeriodCache::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot write period cache");
  out << kHeader << '\n';
  std::shared_lock lock(mutex_);
  for (const auto& [key, rec] : records_) {
    out << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << rec.prime << ' ' << rec.ordM << ' '
        << to_string(rec.boundCase) << ' ' << rec.legendreDelta << ' ' << (rec.deltaSquare ? 1 : 0) << '\n';
  }
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

}  // namespace powsieve
