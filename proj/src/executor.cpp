#include "vreach/executor.hpp"

#include <algorithm>
#include <thread>

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include "vreach/errors.hpp"

namespace vreach {

bool CancelToken::stop_requested() const noexcept {
  if (stop_.load(std::memory_order_relaxed)) return true;
  return deadline_ && std::chrono::steady_clock::now() >= *deadline_;
}

struct Executor::Arena {
  // Lifts TBB's default cap at the hardware thread count so that the
  // requested worker count is honoured.
  explicit Arena(int n)
      : limit(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(n)), arena(n) {}
  tbb::global_control limit;
  tbb::task_arena arena;
};

Executor::Executor(std::size_t workers)
    : workers_(std::max<std::size_t>(1, workers)),
      arena_(std::make_unique<Arena>(static_cast<int>(workers_))) {}

Executor::~Executor() = default;

void Executor::checkpoint() const {
  if (token_.stop_requested()) throw Cancelled();
}

void Executor::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  if (workers_ == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  arena_->arena.execute([&] {
    tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, 1),
                      [&](const tbb::blocked_range<std::size_t>& r) {
                        for (std::size_t i = r.begin(); i != r.end(); ++i) fn(i);
                      });
  });
}

std::size_t Executor::hardware_workers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace vreach
