#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace loopbench {

// Fixed-capacity ring of sensor packets. Single writer (the device loop);
// readers never block the writer: each slot is a seqlock, torn reads are
// retried on the reader side. Overflow silently drops the oldest packets.
template <class P>
class PacketRing {
  static_assert(std::is_trivially_copyable_v<P>, "packets must be trivially copyable");

 public:
  explicit PacketRing(std::size_t capacity = 64) : slots_(capacity) {
    if (capacity == 0) throw std::invalid_argument("packet ring capacity must be positive");
  }

  std::size_t capacity() const { return slots_.size(); }

  // Total packets ever pushed (not the number currently retained).
  std::uint64_t count() const { return count_.load(std::memory_order_acquire); }

  std::size_t available() const {
    const std::uint64_t n = count();
    return n < slots_.size() ? static_cast<std::size_t>(n) : slots_.size();
  }

  void push(const P& p) {
    const std::uint64_t n = count_.load(std::memory_order_relaxed);
    Slot& s = slots_[n % slots_.size()];
    const std::uint64_t seq = s.seq.load(std::memory_order_relaxed);
    s.seq.store(seq + 1, std::memory_order_release);  // odd: write in progress
    std::atomic_thread_fence(std::memory_order_release);
    s.value = p;
    std::atomic_thread_fence(std::memory_order_release);
    s.seq.store(seq + 2, std::memory_order_release);
    count_.store(n + 1, std::memory_order_release);
  }

  // Newest-last (chronological) copy of up to n packets; returns fewer when
  // the ring holds fewer. Callers pad with zero packets where required.
  std::vector<P> latest(std::size_t n) const {
    const std::uint64_t total = count();
    std::size_t have = total < slots_.size() ? static_cast<std::size_t>(total) : slots_.size();
    if (n > have) n = have;
    std::vector<P> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t idx = total - n + i;
      out[i] = read_slot(idx % slots_.size());
    }
    return out;
  }

  P newest() const {
    const std::uint64_t total = count();
    if (total == 0) throw std::runtime_error("packet ring is empty");
    return read_slot((total - 1) % slots_.size());
  }

  // Writer-side reset between episodes.
  void clear() { count_.store(0, std::memory_order_release); }

 private:
  struct Slot {
    std::atomic<std::uint64_t> seq{0};
    P value{};
  };

  P read_slot(std::size_t i) const {
    const Slot& s = slots_[i];
    for (;;) {
      const std::uint64_t s1 = s.seq.load(std::memory_order_acquire);
      if (s1 & 1ull) continue;
      P v = s.value;
      std::atomic_thread_fence(std::memory_order_acquire);
      const std::uint64_t s2 = s.seq.load(std::memory_order_acquire);
      if (s1 == s2) return v;
    }
  }

  std::vector<Slot> slots_;
  std::atomic<std::uint64_t> count_{0};
};

}  // namespace loopbench
