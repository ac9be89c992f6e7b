#include "loopbench/tasks/targets.hpp"

namespace loopbench::tasks {

sim::Vec2 draw_planar_target(Rng& rng, const sim::Vec2& center, double half_x, double half_y) {
  return sim::Vec2{center[0] + rng.uniform(-half_x, half_x), center[1] + rng.uniform(-half_y, half_y)};
}

sim::Vec3 draw_spatial_target(Rng& rng, const sim::Vec3& center, double half_x, double half_y,
                              double half_z) {
  return sim::Vec3{center[0] + rng.uniform(-half_x, half_x), center[1] + rng.uniform(-half_y, half_y),
                   center[2] + rng.uniform(-half_z, half_z)};
}

double draw_angle_target(Rng& rng, double center, double half) {
  return center + rng.uniform(-half, half);
}

TrackerSchedule draw_tracker_schedule(Rng& rng, double duration, double magnitude_max) {
  TrackerSchedule s;
  s.direction = rng.coin() ? 1.0 : -1.0;
  s.magnitude = rng.uniform(0.0, magnitude_max);
  s.duration = duration;
  return s;
}

}  // namespace loopbench::tasks
