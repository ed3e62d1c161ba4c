#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace qclt {

// Worker-pool size: explicit request, then QCLT_THREADS, then the hardware.
int resolve_threads(int requested);

// Runs fn(i) for i in [0, count) on a small pool. Each index owns its output
// slot, so results do not depend on the executing thread.
template <typename Fn>
void parallel_index(int count, int threads, Fn&& fn) {
  threads = resolve_threads(threads);
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, count);
  pool.reserve(n);
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace qclt
