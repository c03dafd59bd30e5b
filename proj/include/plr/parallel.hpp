#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace plr {

// Runs body(index, worker) for index in [0, count) on up to `jobs` threads.
// Indices are handed out dynamically; the first exception is rethrown.
template <class Body>
void parallel_for(std::size_t count, int jobs, Body&& body) {
  std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs < 1 ? 1 : jobs, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i, std::size_t{0});
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&](std::size_t worker) {
    try {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        body(i, worker);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(count);
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) threads.emplace_back(run, w);
  run(0);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

inline int worker_count(std::size_t count, int jobs) {
  return static_cast<int>(std::max<std::size_t>(1, std::min<std::size_t>(jobs < 1 ? 1 : jobs, count)));
}

}  // namespace plr
