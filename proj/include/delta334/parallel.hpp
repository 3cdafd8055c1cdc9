#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace delta334 {

// Worker count used when a caller passes 0: DELTA334_THREADS if set,
// otherwise hardware concurrency.
inline unsigned default_thread_count() {
  if (const char* env = std::getenv("DELTA334_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(shard, begin, end) over `shards` contiguous ranges of [0, n).
// Results must be written to shard-owned storage; exceptions propagate.
template <class Fn>
void parallel_shards(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = default_thread_count();
  std::size_t shards = std::min<std::size_t>(threads, std::max<std::size_t>(n, 1));
  if (shards <= 1) {
    fn(std::size_t{0}, std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (std::size_t s = 0; s < shards; ++s) {
    std::size_t begin = n * s / shards, end = n * (s + 1) / shards;
    pool.emplace_back([&, s, begin, end] {
      try {
        fn(s, begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace delta334
