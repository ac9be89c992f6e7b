#pragma once

#include <chrono>
#include <stdexcept>
#include <string>
#include <thread>

namespace loopbench {

enum class ClockMode { Virtual, Wall };

inline ClockMode clock_mode_from_string(const std::string& s) {
  if (s == "virtual") return ClockMode::Virtual;
  if (s == "wall") return ClockMode::Wall;
  throw std::invalid_argument("unknown clock mode: " + s);
}

inline const char* to_string(ClockMode m) {
  return m == ClockMode::Virtual ? "virtual" : "wall";
}

// Virtual mode advances only when told to, giving a deterministic
// single-threaded interleave of device and agent loops. Wall mode tracks the
// monotonic clock relative to construction.
class Clock {
 public:
  explicit Clock(ClockMode mode) : mode_(mode), epoch_(std::chrono::steady_clock::now()) {}

  ClockMode mode() const { return mode_; }

  double now() const {
    if (mode_ == ClockMode::Virtual) return virtual_now_;
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_).count();
  }

  void advance(double dt) {
    if (mode_ != ClockMode::Virtual) throw std::logic_error("advance() is virtual-mode only");
    virtual_now_ += dt;
  }

  // Sleeps the calling thread until the given clock-relative time (wall mode).
  void sleep_until(double t) const {
    if (mode_ != ClockMode::Wall) throw std::logic_error("sleep_until() is wall-mode only");
    std::this_thread::sleep_until(epoch_ + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                               std::chrono::duration<double>(t)));
  }

 private:
  ClockMode mode_;
  double virtual_now_ = 0.0;
  std::chrono::steady_clock::time_point epoch_;
};

}  // namespace loopbench
