#pragma once

#include <array>
#include <atomic>
#include <cstdint>

namespace loopbench {

// A device command as held in the action mailbox. Fixed-size so the mailbox
// slot stays trivially copyable; dim <= 6 covers every task.
struct ActionCmd {
  std::array<double, 6> v{};
  int dim = 0;
  // Native-unit commands (scripted agents) bypass the task action box.
  bool native = false;
  std::uint64_t index = 0;  // monotonically increasing post count
};

// Single-slot mailbox: the agent posts, the device loop reads the latest.
// Last write wins; a slow agent simply leaves the previous action in place.
template <class A>
class Mailbox {
 public:
  void post(const A& a) {
    const std::uint64_t seq = seq_.load(std::memory_order_relaxed);
    seq_.store(seq + 1, std::memory_order_release);
    std::atomic_thread_fence(std::memory_order_release);
    value_ = a;
    std::atomic_thread_fence(std::memory_order_release);
    seq_.store(seq + 2, std::memory_order_release);
    posts_.fetch_add(1, std::memory_order_release);
  }

  A read() const {
    for (;;) {
      const std::uint64_t s1 = seq_.load(std::memory_order_acquire);
      if (s1 & 1ull) continue;
      A v = value_;
      std::atomic_thread_fence(std::memory_order_acquire);
      if (seq_.load(std::memory_order_acquire) == s1) return v;
    }
  }

  std::uint64_t posts() const { return posts_.load(std::memory_order_acquire); }

 private:
  std::atomic<std::uint64_t> seq_{0};
  std::atomic<std::uint64_t> posts_{0};
  A value_{};
};

}  // namespace loopbench
