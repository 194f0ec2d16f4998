#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace chamber {

/// Worker count: hardware concurrency, capped by CHAMBER_FORGE_THREADS.
inline std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("CHAMBER_FORGE_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    } catch (const std::exception &) {
    }
  }
  return n;
}

/// out[i] = fn(i) for i < count, computed in contiguous blocks on up to
/// worker_count() threads. The result does not depend on the thread count.
template <class T, class Fn> std::vector<T> parallel_map(std::size_t count, Fn fn) {
  std::vector<T> out(count);
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      const std::size_t end = std::min(count, (w + 1) * block);
      for (std::size_t i = w * block; i < end; ++i) out[i] = fn(i);
    });
  for (auto &t : pool) t.join();
  return out;
}

} // namespace chamber
