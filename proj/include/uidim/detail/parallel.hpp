#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace uidim::detail {

/// Runs fn(chunk) for chunk in [0, chunks) on up to `threads` workers.
/// Chunks are claimed in order; callers store per-chunk results and merge
/// them in chunk order so output never depends on the worker count.
template <class Fn>
void parallel_chunks(std::size_t chunks, unsigned threads, Fn&& fn) {
  const auto workers = static_cast<std::size_t>(std::max(1U, threads));
  if (workers == 1 || chunks <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) fn(c);
    return;
  }
  std::mutex m;
  std::size_t next = 0;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      std::size_t c;
      {
        std::lock_guard lock(m);
        if (next >= chunks || error) return;
        c = next++;
      }
      try {
        fn(c);
      } catch (...) {
        std::lock_guard lock(m);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t i = 0; i < std::min(workers, chunks); ++i) pool.emplace_back(worker);
  pool.clear();
  if (error) std::rethrow_exception(error);
}

}  // namespace uidim::detail
