#pragma once
// Shared store of companion-matrix order data keyed by (A, B, l), with a
// line-oriented text persistence format:
//
//   powsieve-period-cache v1
//   <A> <B> <prime> <ordM> <bound> <legendre> <square>
//
// where <bound> is l(l-1), l-1 or l^2-1 and <square> is 0 or 1.

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <shared_mutex>
#include <tuple>

#include "powsieve/modular.hpp"
#include "powsieve/sieve.hpp"

namespace powsieve {

class PeriodCache {
 public:
  static constexpr const char* kHeader = "powsieve-period-cache v1";

  /// Cached record for (spec.A, spec.B, prime), computed on a miss.
  OrderRecord lookup(const RecurrenceSpec& spec, std::uint64_t prime);
  PeriodRecord period(const RecurrenceSpec& spec, std::uint64_t prime);
  /// A lookup function bound to this cache, for SieveOptions::orders.
  OrderLookup lookupFn();

  std::size_t size() const;
  std::uint64_t hits() const;
  std::uint64_t misses() const;

  /// Merge entries from a file; throws std::runtime_error naming the path on
  /// I/O failure or malformed content.
  void load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

 private:
  using Key = std::tuple<std::int64_t, std::int64_t, std::uint64_t>;

  mutable std::shared_mutex mutex_;
  std::map<Key, OrderRecord> records_;
  std::atomic<std::uint64_t> hits_{0};
  std::atomic<std::uint64_t> misses_{0};
};

}  // namespace powsieve
