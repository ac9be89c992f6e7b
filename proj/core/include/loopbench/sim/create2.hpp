#pragma once

#include <array>
#include <cstdint>

namespace loopbench::sim {

// Differential-drive robot in a walled rectangular arena with a charging dock
// centered on the far (y = depth) wall, facing into the arena. All geometry is
// config-overridable; angles in the param block are degrees for readability.
struct Create2Params {
  double readwrite_cycle_s = 0.015;
  double wheel_base = 0.235;       // m
  double wheel_limit = 500.0;      // mm/s per wheel
  double robot_radius = 0.17;      // m
  double arena_width = 0.914;      // m, x extent (dock wall length)
  double arena_depth = 0.762;      // m, y extent
  // Six forward IR wall sensors, leftmost first, degrees off heading.
  std::array<double, 6> sensor_angles_deg{60.0, 35.0, 10.0, -10.0, -35.0, -60.0};
  bool faulty_wall_sensors = false;             // the +-35 deg pair reads zero
  std::array<int, 2> faulty_indices{1, 4};
  // Inverse-square signal model s(d) = s_raw_max * (ir_d0 / d)^2, saturating
  // outside [range_min, range_max]; s_raw_max is the value at d = ir_d0.
  double ir_d0 = 0.074;
  double ir_s_raw_max = 1023.0;
  double ir_range_min = 0.02;
  double ir_range_max = 0.60;
  // Dock beams and capture cone.
  double dock_buoy_range = 1.2;        // m
  double dock_buoy_half_deg = 40.0;    // buoy cones span [-5, +40] / [-40, +5]
  double dock_buoy_overlap_deg = 5.0;
  double dock_force_field_range = 0.6;  // m
  double receiver_fov_deg = 70.0;       // directional receivers, with overlap below
  double receiver_overlap_deg = 10.0;
  double receiver_omni_fov_deg = 120.0;
  double capture_face_dist = 0.05;      // m from dock face
  double capture_lateral_tol = 0.05;    // m off the dock axis
  double capture_heading_tol_deg = 10.0;
  double capture_latch_speed = 0.020;   // m/s; slower than this while charging latches
};

struct Create2State {
  double x = 0.457;
  double y = 0.381;
  double heading = 0.0;  // radians, +x = 0, +y = pi/2
  bool docked = false;   // latched; wheel commands are ignored until undock
  double t = 0.0;
};

struct Create2Packet {
  double t = 0.0;
  std::array<double, 6> wall_signal{};  // raw signal units
  std::uint8_t bump_left = 0;
  std::uint8_t bump_right = 0;
  // Receiver x beam visibility, [left, omni, right] x [left buoy, force
  // field, right buoy], so ir_dock[0] is the left receiver seeing the left
  // buoy and ir_dock[8] the right receiver seeing the right buoy.
  std::array<std::uint8_t, 9> ir_dock{};
  std::uint8_t charging = 0;
  double distance_mm = 0.0;  // signed displacement along heading this tick
};

double ir_signal(double distance, const Create2Params& p);
double signal_to_distance(double signal, const Create2Params& p);

double wrap_angle(double a);  // to (-pi, pi]

// One device tick: clamp wheel speeds, integrate the unicycle pose along an
// exact arc, clamp the pose to the arena (raising bump flags on forward
// contact), then sample sensors into the returned packet.
Create2Packet create2_step(Create2State& s, const Create2Params& p, double left_mm_s,
                           double right_mm_s, double dt);

// Sensor sampling without moving (used to prime the packet stream).
Create2Packet create2_sense(const Create2State& s, const Create2Params& p, double distance_mm = 0.0,
                            bool bump_left = false, bool bump_right = false);

void create2_undock(Create2State& s);  // releases the latch (reset scripts)

// True when the pose centre is inside the wall-offset rectangle.
bool create2_pose_inside(const Create2State& s, const Create2Params& p);

}  // namespace loopbench::sim
