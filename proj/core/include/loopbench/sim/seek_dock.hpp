#pragma once

#include "loopbench/sim/create2.hpp"

namespace loopbench::sim {

struct WheelCmd {
  double left_mm_s = 0.0;
  double right_mm_s = 0.0;
};

// Sensor-driven docking controller, a stand-in for the robot's built-in
// behaviour. Three phases: sweep in place until dock beams are seen, home
// toward the dock axis using the buoy/receiver bits, then approach slowly so
// the charging latch can engage. Deterministic; the caller enforces the
// overall timeout and reads success off the device docked flag.
class SeekDockController {
 public:
  SeekDockController() = default;
  explicit SeekDockController(const Create2Params& params) : params_(params) {}

  WheelCmd step(const Create2Packet& pk, double dt);

  bool finished() const { return phase_ == Phase::Done; }
  void reset() { *this = SeekDockController{params_}; }

 private:
  enum class Phase { Sweep, Home, Approach, Escape, Done };

  Create2Params params_{};
  Phase phase_ = Phase::Sweep;
  double phase_time_ = 0.0;
  double escape_time_ = 0.0;
};

}  // namespace loopbench::sim
