#include "loopbench/sim/seek_dock.hpp"

#include <algorithm>

namespace loopbench::sim {

namespace {

struct BeamView {
  bool any = false;
  bool left_buoy_omni = false;
  bool right_buoy_omni = false;
  bool both_buoys_omni = false;
  bool force_field = false;
  bool left_receiver = false;
  bool right_receiver = false;
};

BeamView view(const Create2Packet& pk) {
  BeamView v;
  for (int i = 0; i < 9; ++i) v.any = v.any || pk.ir_dock[i];
  v.left_buoy_omni = pk.ir_dock[3];
  v.force_field = pk.ir_dock[4] || pk.ir_dock[1] || pk.ir_dock[7];
  v.right_buoy_omni = pk.ir_dock[5];
  v.both_buoys_omni = v.left_buoy_omni && v.right_buoy_omni;
  v.left_receiver = pk.ir_dock[0] || pk.ir_dock[1] || pk.ir_dock[2];
  v.right_receiver = pk.ir_dock[6] || pk.ir_dock[7] || pk.ir_dock[8];
  return v;
}

}  // namespace

WheelCmd SeekDockController::step(const Create2Packet& pk, double dt) {
  phase_time_ += dt;
  const BeamView b = view(pk);

  if (pk.charging) {
    phase_ = Phase::Done;
    return {0.0, 0.0};
  }

  if (phase_ != Phase::Escape && phase_ != Phase::Done && (pk.bump_left || pk.bump_right)) {
    // Walked into a wall away from the dock: back off, turn, start over.
    phase_ = Phase::Escape;
    escape_time_ = 0.0;
  }

  switch (phase_) {
    case Phase::Sweep:
      if (b.any) {
        phase_ = Phase::Home;
        phase_time_ = 0.0;
        break;
      }
      return {-150.0, 150.0};
    case Phase::Escape:
      escape_time_ += dt;
      if (escape_time_ < 0.6) return {-120.0, -120.0};
      if (escape_time_ < 1.4) return {-150.0, 150.0};
      phase_ = Phase::Sweep;
      phase_time_ = 0.0;
      return {-150.0, 150.0};
    case Phase::Done:
      return {0.0, 0.0};
    default:
      break;
  }

  if (phase_ == Phase::Home) {
    if (b.both_buoys_omni && b.left_receiver && b.right_receiver) {
      // On the axis facing the dock.
      phase_ = Phase::Approach;
      phase_time_ = 0.0;
    } else if (!b.any) {
      phase_ = Phase::Sweep;
      phase_time_ = 0.0;
      return {-150.0, 150.0};
    } else if (b.left_receiver && !b.right_receiver) {
      return {20.0, 140.0};  // dock is to the left
    } else if (b.right_receiver && !b.left_receiver) {
      return {140.0, 20.0};
    } else if (b.left_receiver && b.right_receiver) {
      // Facing the dock; bias toward the axis using the buoy split.
      if (b.both_buoys_omni) {
        phase_ = Phase::Approach;
        phase_time_ = 0.0;
      } else if (b.left_buoy_omni) {
        return {110.0, 70.0};  // robot left of the axis, angle in from the left
      } else if (b.right_buoy_omni) {
        return {70.0, 110.0};
      } else {
        return {90.0, 90.0};
      }
    } else {
      return {-80.0, 80.0};  // beams only on the omni receiver: spin to face
    }
  }

  if (phase_ == Phase::Approach) {
    if (!b.left_receiver || !b.right_receiver) {
      // Lost the facing: re-home.
      phase_ = Phase::Home;
      phase_time_ = 0.0;
      return {40.0, 40.0};
    }
    // Slow right down once the dock wall fills the front sensors so the
    // latch speed condition holds at contact.
    const double front = std::max(pk.wall_signal[2], pk.wall_signal[3]);
    const double near = ir_signal(0.08, params_);
    double base = front >= near ? 16.0 : 60.0;
    if (b.both_buoys_omni) return {base, base};
    if (b.left_buoy_omni) return {base + 8.0, base - 8.0};
    if (b.right_buoy_omni) return {base - 8.0, base + 8.0};
    return {base, base};
  }

  return {0.0, 0.0};
}

}  // namespace loopbench::sim
