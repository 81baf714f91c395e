#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace torsionscope {

/// Worker count for stage-parallel loops: hardware concurrency capped by the
/// TORSIONSCOPE_THREADS environment variable (at least 1).
inline std::size_t thread_budget() {
  std::size_t budget = std::thread::hardware_concurrency();
  if (budget == 0) budget = 1;
  if (const char* env = std::getenv("TORSIONSCOPE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) budget = std::min<std::size_t>(budget, static_cast<std::size_t>(v));
  }
  return std::max<std::size_t>(budget, 1);
}

/// Runs fn(i) for i in [0, n). Work items must be independent; callers keep
/// determinism by writing into preallocated index slots.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min(thread_budget(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace torsionscope
