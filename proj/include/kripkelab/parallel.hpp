#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kripkelab {

/// Thread count from an explicit request, else KRIPKELAB_THREADS, else the
/// hardware concurrency. Always at least 1.
std::size_t resolve_threads(std::size_t requested);

/// Calls fn(i) for every i in [0, count) on up to `threads` workers. Work is
/// handed out in chunks; callers write results into per-index slots so the
/// outcome never depends on scheduling. The exception from the lowest failing
/// index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn, std::size_t chunk = 64) {
  threads = std::max<std::size_t>(1, std::min(threads, (count + chunk - 1) / std::max<std::size_t>(chunk, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr error;
  std::size_t error_index = count;
  auto worker = [&] {
    while (true) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= count) return;
      const std::size_t end = std::min(count, begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
          return;
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace kripkelab
