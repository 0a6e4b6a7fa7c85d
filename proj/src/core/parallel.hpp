// Deterministic parallel loop: work items write results indexed by their own
// position, so the outcome does not depend on the thread count. Thread count
// comes from the RRW_THREADS environment variable, defaulting to the
// hardware concurrency.
#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace rrw {

inline unsigned thread_count() {
  if (const char *env = std::getenv("RRW_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

template <typename Fn>
void parallel_for(std::int64_t count, Fn &&fn) {
  const unsigned workers = thread_count();
  if (workers <= 1 || count < 2) {
    for (std::int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> threads;
  const unsigned used = workers < static_cast<unsigned>(count)
                            ? workers
                            : static_cast<unsigned>(count);
  threads.reserve(used);
  for (unsigned t = 0; t < used; ++t) {
    threads.emplace_back([&] {
      for (;;) {
        const std::int64_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto &th : threads) th.join();
}

}  // namespace rrw
