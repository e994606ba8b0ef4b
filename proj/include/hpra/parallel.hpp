#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hpra {

/// Worker count from an explicit request, falling back to HPRA_THREADS and
/// then hardware concurrency. Never returns 0.
unsigned resolve_threads(unsigned requested);

/// Runs body(begin, end) over contiguous chunks of [0, count). The first
/// exception thrown by a worker is rethrown after all workers join.
template <typename Body>
void parallel_chunks(std::size_t count, unsigned threads, Body body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, w, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace hpra
