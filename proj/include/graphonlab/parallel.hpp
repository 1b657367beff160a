#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace graphonlab {

/// Worker count: GRAPHONLAB_THREADS if set to a positive integer, else the
/// hardware concurrency (at least 1).
int thread_count();

/// Calls body(i) for i in [0, count) on up to thread_count() threads.
///
/// Callers write results into slot i of a preallocated vector, so output is
/// independent of scheduling. The first exception thrown by any body is
/// rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace graphonlab
