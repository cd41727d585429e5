#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace subdiv {

/// Splits [0, count) into contiguous chunks, runs `body(begin, end, chunk)`
/// for each chunk on up to `threads` workers, and returns the chunk results
/// in chunk order. Chunking depends only on `count` and `chunks`, never on the
/// thread count, so reductions over the result are deterministic.
template <typename Result, typename Body>
std::vector<Result> parallel_chunks(std::size_t count, unsigned threads, Body body,
                                    std::size_t chunks = 64) {
  chunks = std::max<std::size_t>(1, std::min(chunks, count));
  std::vector<Result> results(chunks);
  if (count == 0) return std::vector<Result>{};
  auto bounds = [&](std::size_t c) { return count * c / chunks; };
  const unsigned workers =
      static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, chunks)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) results[c] = body(bounds(c), bounds(c + 1), c);
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t c = w; c < chunks; c += workers)
          results[c] = body(bounds(c), bounds(c + 1), c);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

/// Worker count used when a caller passes 0.
unsigned default_thread_count();

}  // namespace subdiv
