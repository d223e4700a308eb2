#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace qmfs::cli {

// Worker cap from QMFS_THREADS, else the hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("QMFS_THREADS"); env && *env) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// out[i] = fn(i) for i < n, computed in contiguous blocks; rows come back in
// index order regardless of the worker count.
template <class Fn>
auto ordered_map(std::size_t n, unsigned workers, Fn fn) {
  using T = decltype(fn(std::size_t{}));
  std::vector<T> out(n);
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  {
    std::vector<std::jthread> pool;
    for (unsigned k = 0; k < workers; ++k) {
      pool.emplace_back([&, k] {
        try {
          for (std::size_t i = k * chunk; i < std::min(n, (k + 1) * chunk); ++i) out[i] = fn(i);
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace qmfs::cli
