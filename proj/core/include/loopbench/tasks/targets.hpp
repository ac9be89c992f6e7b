#pragma once

#include <algorithm>

#include "loopbench/rng.hpp"
#include "loopbench/sim/ur5.hpp"

namespace loopbench::tasks {

// Target boxes are centred on the arm's home fingertip; draws are uniform and
// componentwise in a fixed order (x, then y, then z).
sim::Vec2 draw_planar_target(Rng& rng, const sim::Vec2& center, double half_x = 0.35,
                             double half_y = 0.25);
sim::Vec3 draw_spatial_target(Rng& rng, const sim::Vec3& center, double half_x = 0.35,
                              double half_y = 0.25, double half_z = 0.20);

// Uniform joint target within +-half of the centre angle.
double draw_angle_target(Rng& rng, double center = 0.0, double half = 1.047);

// Constant-speed tracker target: starts uniformly in [-mag, +mag] (sign drawn
// first, then magnitude) and reaches the centre exactly at t = duration.
struct TrackerSchedule {
  double direction = 1.0;  // +-1
  double magnitude = 0.0;  // rad
  double duration = 4.0;   // s

  double position(double t) const {
    t = std::clamp(t, 0.0, duration);
    return direction * magnitude * (t / duration - 1.0);
  }
  double start() const { return -direction * magnitude; }
};

TrackerSchedule draw_tracker_schedule(Rng& rng, double duration, double magnitude_max = 0.8);

}  // namespace loopbench::tasks
