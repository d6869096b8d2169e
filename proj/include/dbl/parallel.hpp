#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace dbl {

/// Worker cap: DBL_WORKERS if set to a positive integer, else the hardware
/// concurrency (at least 1).
int worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Results must
/// be written to per-index slots; the first exception is rethrown.
template <class Body>
void parallel_for(size_t n, Body body) {
  const size_t workers = std::min<size_t>(static_cast<size_t>(worker_count()), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace dbl
