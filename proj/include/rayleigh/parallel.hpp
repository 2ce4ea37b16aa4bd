#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

namespace rayleigh {

/// Calls fn(i) for i in [0, count) on `workers` threads.
///
/// Work is handed out in small chunks from a shared counter. fn must write
/// only to per-index storage; the caller aggregates afterwards in index order,
/// which keeps results independent of the worker count. If several calls
/// throw, the exception of the lowest index is rethrown.
template <class Fn>
void run_trials(long count, int workers, Fn&& fn) {
  if (count <= 0) return;
  if (workers < 1) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<long>(workers, count));
  if (workers == 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  constexpr long kChunk = 16;
  std::atomic<long> next{0};
  std::mutex error_mutex;
  long error_index = std::numeric_limits<long>::max();
  std::exception_ptr error;
  auto body = [&] {
    for (;;) {
      const long start = next.fetch_add(kChunk);
      if (start >= count) return;
      const long stop = std::min(count, start + kChunk);
      for (long i = start; i < stop; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (i < error_index) {
            error_index = i;
            error = std::current_exception();
          }
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rayleigh
