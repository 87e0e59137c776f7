#include "nlslab/parallel.hpp"

#include <string>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {
std::atomic<int>& workers() {
  static std::atomic<int> n{1};
  return n;
}
}  // namespace

int thread_count() { return workers().load(std::memory_order_relaxed); }

void set_thread_count(int n) {
  if (n == 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (n < 0) throw ValidationError("threads", "must be >= 0, got " + std::to_string(n));
  workers().store(n, std::memory_order_relaxed);
}

}  // namespace nlslab
