#pragma once

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace monoball {

// Worker budget: MONOBALL_THREADS if set and positive, else the hardware count.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("MONOBALL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Split [0, n) into contiguous chunks, run body(chunk_index, begin, end) on
/// each, and return once all are done. Chunk boundaries depend only on n and
/// the worker count, so callers can merge per-chunk results deterministically.
template <class Body>
std::size_t parallel_chunks(std::size_t n, std::size_t min_chunk, Body&& body) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(1, n / std::max<std::size_t>(1, min_chunk)));
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, n);
    return 1;
  }
  const std::size_t step = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t b = w * step, e = std::min(n, b + step);
    if (b >= e) break;
    pool.emplace_back([&body, w, b, e] { body(w, b, e); });
  }
  for (auto& t : pool) t.join();
  return workers;
}

}  // namespace monoball
