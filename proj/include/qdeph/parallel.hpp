#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace qdeph {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QDEPH_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Index-parallel map. Each index is processed independently; callers must
// write results into pre-allocated per-index slots so the outcome does not
// depend on the thread count.
inline void parallel_for(int64_t count, int n_threads,
                         const std::function<void(int64_t)>& fn) {
  n_threads = resolve_threads(n_threads);
  if (n_threads <= 1 || count < 2) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next(0);
  const int64_t chunk = 64;
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  for (int t = 0; t < n_threads; ++t) {
    workers.emplace_back([&]() {
      for (;;) {
        int64_t begin = next.fetch_add(chunk);
        if (begin >= count) break;
        int64_t end = std::min(begin + chunk, count);
        for (int64_t i = begin; i < end; ++i) fn(i);
      }
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace qdeph
