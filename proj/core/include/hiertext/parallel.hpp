#pragma once

#include <atomic>
#include <thread>
#include <vector>

namespace hiertext {

inline int resolve_thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(0..count-1) on up to `threads` workers. Callers write results into
/// per-index slots, which keeps outputs independent of scheduling order.
template <typename Fn>
void parallel_for(size_t count, int threads, Fn&& fn) {
  threads = resolve_thread_count(threads);
  if (threads <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  const size_t nthreads = std::min(static_cast<size_t>(threads), count);
  pool.reserve(nthreads);
  for (size_t t = 0; t < nthreads; ++t)
    pool.emplace_back([&]() {
      for (size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& t : pool) t.join();
}

}  // namespace hiertext
