#include "powsieve/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace powsieve {

void parallelFor(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex errorMutex;
  auto worker = [&] {
    for (std::size_t i; !failed.load() && (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(errorMutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::string> SweepResult::errors() const {
  std::vector<std::string> out;
  for (const auto& block : blocks) {
    for (const auto& row : block.power)
      for (std::size_t i = 0; i < row.cells.size(); ++i)
        if (!row.cells[i].outcome)
          out.push_back(to_string(row.spec) + " q=" + std::to_string(config.qList[i]) + ": " + row.cells[i].error);
    for (const auto& row : block.impossible)
      for (const auto& e : row.errors) out.push_back(to_string(row.spec) + " " + e);
  }
  return out;
}

std::optional<std::uint64_t> headerModulus(std::int64_t A, std::int64_t B, std::uint64_t q,
                                           const SieveOptions& options) {
  SieveOptions o = options;
  o.periodSource = PeriodSource::MatrixOrder;
  const auto primes = selectPrimes({A, B, 0, 1}, {1, q}, o);
  if (primes.empty()) return std::nullopt;
  return primes.back().nAfter;
}

namespace {

struct Task {
  std::size_t block;
  std::size_t row;
  std::size_t column;
  bool power;
};

}  // namespace

SweepResult sweep(const SweepConfig& config, PeriodCache& cache, const SweepSelection& selection) {
  config.validate();
  SweepResult result;
  result.config = config;
  SieveOptions options = config.sieveOptions();
  options.orders = cache.lookupFn();

  const auto blocks = coefficientBlocks(config.maxAB);
  for (std::size_t pos = 0; pos < blocks.size(); ++pos) {
    const auto [a, b] = blocks[pos];
    if (selection.block && *selection.block != blocks[pos]) continue;
    BlockResult block;
    block.A = a;
    block.B = b;
    block.position = pos;
    for (const auto& spec : enumerateBlock(a, b, config.maxInit)) {
      if (selection.power) block.power.push_back({spec, std::vector<CellResult>(config.qList.size())});
      if (selection.impossibility)
        block.impossible.push_back({spec, std::vector<std::vector<std::int64_t>>(config.impossibilityQ.size()), {}});
    }
    if (selection.power) block.headerN.resize(config.qList.size());
    result.blocks.push_back(std::move(block));
  }

  std::vector<Task> tasks;
  for (std::size_t bi = 0; bi < result.blocks.size(); ++bi) {
    const auto& block = result.blocks[bi];
    for (std::size_t qi = 0; qi < block.headerN.size(); ++qi) tasks.push_back({bi, SIZE_MAX, qi, true});
    for (std::size_t r = 0; r < block.power.size(); ++r)
      for (std::size_t qi = 0; qi < config.qList.size(); ++qi) tasks.push_back({bi, r, qi, true});
    for (std::size_t r = 0; r < block.impossible.size(); ++r)
      for (std::size_t qi = 0; qi < config.impossibilityQ.size(); ++qi) tasks.push_back({bi, r, qi, false});
  }

  // Each task writes only its own slot, so no locking is needed beyond the cache.
  std::vector<std::vector<std::string>> impossibleErrors(tasks.size());
  parallelFor(tasks.size(), config.jobs, [&](std::size_t t) {
    const Task& task = tasks[t];
    BlockResult& block = result.blocks[task.block];
    if (task.power && task.row == SIZE_MAX) {
      try {
        block.headerN[task.column] = headerModulus(block.A, block.B, config.qList[task.column], options);
      } catch (const std::exception&) {
        block.headerN[task.column] = std::nullopt;
      }
      return;
    }
    if (task.power) {
      PowerRow& row = block.power[task.row];
      CellResult& cell = row.cells[task.column];
      try {
        cell.outcome = runSieve(row.spec, {1, config.qList[task.column]}, options);
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
      return;
    }
    ImpossibilityRow& row = block.impossible[task.row];
    const std::uint64_t q = config.impossibilityQ[task.column];
    auto& list = row.kLists[task.column];
    for (std::int64_t k : qPowerFreeRange(config.kMin, config.kMax, q)) {
      try {
        if (runSieve(row.spec, {k, q}, options).classification.kind == Classification::Kind::Empty)
          list.push_back(k);
      } catch (const std::exception& e) {
        impossibleErrors[t].push_back("q=" + std::to_string(q) + " k=" + std::to_string(k) + ": " + e.what());
      }
    }
  });

  for (std::size_t t = 0; t < tasks.size(); ++t) {
    if (impossibleErrors[t].empty()) continue;
    auto& errs = result.blocks[tasks[t].block].impossible[tasks[t].row].errors;
    errs.insert(errs.end(), impossibleErrors[t].begin(), impossibleErrors[t].end());
  }
  return result;
}

}  // namespace powsieve
