#pragma once

// Minimal worker pool for embarrassingly parallel verification loops.
// TF_THREADS caps the number of workers; results must be written to
// per-index slots by the caller so the merge stays deterministic.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tri {

inline int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  int w = int(hw);
  if (const char* env = std::getenv("TF_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) w = std::min(w, v);
  }
  return w;
}

template <typename F>
void parallel_for(int n, F&& fn) {
  int w = std::min(worker_count(), n);
  if (w <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (int t = 0; t < w; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace tri
