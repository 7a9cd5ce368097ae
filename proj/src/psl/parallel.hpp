#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psl {

// Worker count: PSL_THREADS env var if set, hardware concurrency otherwise,
// clamped to [1, 64].
inline unsigned worker_count() {
  if (const char* env = std::getenv("PSL_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v > 64 ? 64 : v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return hw > 64 ? 64 : hw;
}

// Runs fn(begin, end, worker_id) over [0, count) split into chunks of at
// most `chunk` items.  Chunks are pulled from an atomic counter; callers
// must make results independent of which worker handles which chunk.
template <class F>
void parallel_chunks(uint64_t count, uint64_t chunk, F&& fn) {
  if (count == 0) return;
  if (chunk == 0) chunk = 1;
  uint64_t n_chunks = (count + chunk - 1) / chunk;
  unsigned workers = worker_count();
  if (workers > n_chunks) workers = static_cast<unsigned>(n_chunks);

  if (workers <= 1) {
    for (uint64_t c = 0; c < n_chunks; ++c) {
      uint64_t lo = c * chunk;
      uint64_t hi = lo + chunk < count ? lo + chunk : count;
      fn(lo, hi, 0u);
    }
    return;
  }

  std::atomic<uint64_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto body = [&](unsigned worker_id) {
    for (;;) {
      uint64_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= n_chunks) return;
      uint64_t lo = c * chunk;
      uint64_t hi = lo + chunk < count ? lo + chunk : count;
      try {
        fn(lo, hi, worker_id);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body, w);
  body(0);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace psl
