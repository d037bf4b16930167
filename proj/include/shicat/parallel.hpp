#pragma once

// Worker pool sized by the SHICAT_WORKERS environment variable (defaults to
// the hardware concurrency). Results are collected per index, so reductions
// stay deterministic regardless of scheduling.

#include <atomic>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace shicat {

inline unsigned worker_count() {
  if (const char* env = std::getenv("SHICAT_WORKERS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

template <typename F>
void parallel_for(long n, F&& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<long> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace shicat
