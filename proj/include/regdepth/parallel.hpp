#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace regdepth {

/// Worker cap for the parallel loops; 0 restores machine parallelism.
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

/// Splits [0, count) into contiguous chunks, evaluates chunk(begin, end) per
/// worker and folds the partial results in chunk order. Callers only use
/// order-insensitive folds (min/max with total tie-break order), so results
/// do not depend on the worker count.
template <class T, class Chunk, class Fold>
T parallel_reduce(std::size_t count, T init, Chunk chunk, Fold fold) {
  const std::size_t min_per_worker = 64;
  std::size_t workers = std::min<std::size_t>(max_threads(), (count + min_per_worker - 1) / min_per_worker);
  if (workers <= 1) return fold(init, chunk(std::size_t{0}, count));

  std::vector<T> partial(workers, init);
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t step = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(count, w * step);
    const std::size_t end = std::min(count, begin + step);
    pool.emplace_back([&partial, &errors, &chunk, w, begin, end] {
      try {
        partial[w] = chunk(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  T acc = init;
  for (auto& part : partial) acc = fold(acc, part);
  return acc;
}

}  // namespace regdepth
