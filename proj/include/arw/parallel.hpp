#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace arw {

/// Effective worker count: `requested <= 0` picks the hardware count, capped.
inline int resolve_threads(int requested, std::size_t jobs) {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw <= 0) hw = 1;
  int t = requested > 0 ? requested : std::min(hw, 8);
  return static_cast<int>(std::min<std::size_t>(t, std::max<std::size_t>(jobs, 1)));
}

// Static block partition over [0, count). Each index does independent work
// (results land in per-index slots), so the outcome does not depend on the
// thread count.
inline void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  int t = resolve_threads(threads, count);
  if (t <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  const std::size_t chunk = (count + t - 1) / t;
  for (int w = 0; w < t; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (std::size_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace arw
