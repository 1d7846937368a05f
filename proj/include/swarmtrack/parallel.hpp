#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace swarmtrack {

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
/// handled by exactly one thread; fn must not touch shared mutable state.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
}

}  // namespace swarmtrack
