#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ultratree {

// Worker count for ladder sweeps; override with ULTRATREE_THREADS.
inline unsigned thread_cap() {
  if (const char* env = std::getenv("ULTRATREE_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Applies f to 0..n-1, possibly concurrently, and returns results in index
// order. If several calls throw, the exception from the lowest index wins,
// so failures are deterministic regardless of scheduling.
template <class F>
auto parallel_map_index(std::size_t n, F&& f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<std::optional<R>> slots(n);
  unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(thread_cap(), n == 0 ? std::size_t{1} : n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(f(i));
  } else {
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr first_error;
    std::size_t first_error_index = n;
    auto work = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          slots[i].emplace(f(i));
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (i < first_error_index) {
            first_error_index = i;
            first_error = std::current_exception();
          }
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }
  std::vector<R> out;
  out.reserve(n);
  for (std::optional<R>& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ultratree
