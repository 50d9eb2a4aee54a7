#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace allspeed {

/// Worker cap: ALLSPEED_THREADS if set and positive, else the hardware concurrency.
inline int worker_threads() {
  static const int n = [] {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ALLSPEED_THREADS")) {
      try {
        const int cap = std::stoi(env);
        if (cap > 0) return std::min<int>(cap, static_cast<int>(hw));
      } catch (...) {
      }
    }
    return static_cast<int>(hw);
  }();
  return n;
}

/**
 * @brief Runs fn(j) for j in [j0, j1), splitting rows across workers.
 *
 * Every row is written by exactly one worker, so results do not depend on
 * the thread count. Small workloads run inline.
 */
template <class Fn>
void parallel_rows(int j0, int j1, long cells_per_row, Fn&& fn) {
  constexpr long kMinCellsPerWorker = 16384;
  const int rows = j1 - j0;
  const long work = static_cast<long>(rows) * cells_per_row;
  const int workers = std::min<int>(worker_threads(), static_cast<int>(work / kMinCellsPerWorker));
  if (workers <= 1 || rows < 2) {
    for (int j = j0; j < j1; ++j) fn(j);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      const int a = j0 + rows * w / workers;
      const int b = j0 + rows * (w + 1) / workers;
      pool.emplace_back([a, b, w, &fn, &errors] {
        try {
          for (int j = a; j < b; ++j) fn(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace allspeed
