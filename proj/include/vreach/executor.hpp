#pragma once

#include <atomic>
#include <chrono>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>

namespace vreach {

/// Cooperative stop signal shared between a run and whoever wants to end it.
class CancelToken {
 public:
  void request_stop() noexcept { stop_.store(true, std::memory_order_relaxed); }
  void set_deadline(std::chrono::steady_clock::time_point t) { deadline_ = t; }
  bool stop_requested() const noexcept;

 private:
  std::atomic<bool> stop_{false};
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

/// Worker pool plus the cancellation token of the current run.
///
/// parallel_for calls fn(i) for every i in [0, n); callers write results into
/// index-addressed slots, so the outcome never depends on the worker count.
/// Nested calls from inside fn share the same pool.
class Executor {
 public:
  explicit Executor(std::size_t workers = 1);
  ~Executor();
  Executor(const Executor&) = delete;
  Executor& operator=(const Executor&) = delete;

  std::size_t workers() const noexcept { return workers_; }
  CancelToken& cancel_token() noexcept { return token_; }

  /// Throws Cancelled if a stop was requested or the deadline passed.
  void checkpoint() const;

  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

  static std::size_t hardware_workers();

 private:
  struct Arena;
  std::size_t workers_;
  std::unique_ptr<Arena> arena_;
  CancelToken token_;
};

}  // namespace vreach
