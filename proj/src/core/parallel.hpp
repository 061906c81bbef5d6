#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

#include "core/error.hpp"

namespace agpar {

inline void require_threads(int threads) {
  if (threads < 1) fail(ErrorKind::InvalidArgument, "threads must be >= 1");
}

// Runs body(chunk_begin, chunk_end) over a static partition of [begin, end).
inline void parallel_chunks(std::uint64_t begin, std::uint64_t end, int threads,
                            const std::function<void(std::uint64_t, std::uint64_t)>& body) {
  require_threads(threads);
  const std::uint64_t total = end > begin ? end - begin : 0;
  if (total == 0) return;
  const std::uint64_t workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), total);
  if (workers == 1) {
    body(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t lo = begin + w * chunk;
    const std::uint64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  for (auto& t : pool) t.join();
}

// Finds the smallest index in [0, total) where pred(i) is true. Workers pull
// ascending blocks from a shared cursor and stop once the cursor passes the
// best hit, so the result is the global minimum regardless of thread count.
template <class Pred>
std::optional<std::uint64_t> find_first_index(std::uint64_t total, int threads, Pred&& pred) {
  require_threads(threads);
  if (total == 0) return std::nullopt;
  if (threads == 1 || total < 4096) {
    for (std::uint64_t i = 0; i < total; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  constexpr std::uint64_t kBlock = 8192;
  std::atomic<std::uint64_t> cursor{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  auto worker = [&] {
    for (;;) {
      const std::uint64_t lo = cursor.fetch_add(kBlock);
      if (lo >= total || lo >= best.load()) return;
      const std::uint64_t hi = std::min(total, lo + kBlock);
      for (std::uint64_t i = lo; i < hi; ++i) {
        if (pred(i)) {
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), (total + kBlock - 1) / kBlock));
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  const std::uint64_t found = best.load();
  if (found == UINT64_MAX) return std::nullopt;
  return found;
}

}  // namespace agpar
