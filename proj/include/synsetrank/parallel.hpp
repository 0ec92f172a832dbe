#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace synsetrank {

inline int default_jobs() {
  unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// Runs fn(0) .. fn(task_count-1) on up to `jobs` threads. Tasks must write
// only to their own output slots; callers merge results in task order, so the
// outcome does not depend on scheduling. The first exception thrown by any
// task is rethrown after all workers have stopped.
inline void parallel_for(std::size_t task_count, int jobs,
                         const std::function<void(std::size_t)>& fn) {
  if (jobs <= 0) jobs = default_jobs();
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), task_count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < task_count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= task_count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

} // namespace synsetrank
