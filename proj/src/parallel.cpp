#include "regdepth/parallel.hpp"

#include <atomic>

namespace regdepth {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_max_threads(unsigned n) noexcept { g_threads.store(n); }

unsigned max_threads() noexcept {
  const unsigned n = g_threads.load();
  if (n > 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace regdepth
