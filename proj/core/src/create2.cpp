#include "loopbench/sim/create2.hpp"

#include <algorithm>
#include <cmath>

namespace loopbench::sim {

namespace {

constexpr double kPi = 3.14159265358979312;

double deg(double d) { return d * kPi / 180.0; }

// Distance from point (x, y) to the arena wall along direction (dx, dy).
double ray_to_walls(double x, double y, double dx, double dy, double w, double h) {
  double best = 1e9;
  if (dx > 1e-12) best = std::min(best, (w - x) / dx);
  if (dx < -1e-12) best = std::min(best, (0.0 - x) / dx);
  if (dy > 1e-12) best = std::min(best, (h - y) / dy);
  if (dy < -1e-12) best = std::min(best, (0.0 - y) / dy);
  return best;
}

}  // namespace

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

double ir_signal(double distance, const Create2Params& p) {
  const double d = std::clamp(distance, p.ir_range_min, p.ir_range_max);
  const double r = p.ir_d0 / d;
  return p.ir_s_raw_max * r * r;
}

double signal_to_distance(double signal, const Create2Params& p) {
  const double s_min = ir_signal(p.ir_range_max, p);
  const double s_max = ir_signal(p.ir_range_min, p);
  const double s = std::clamp(signal, s_min, s_max);
  return p.ir_d0 * std::sqrt(p.ir_s_raw_max / s);
}

bool create2_pose_inside(const Create2State& s, const Create2Params& p) {
  const double r = p.robot_radius;
  return s.x >= r && s.x <= p.arena_width - r && s.y >= r && s.y <= p.arena_depth - r;
}

Create2Packet create2_sense(const Create2State& s, const Create2Params& p, double distance_mm,
                            bool bump_left, bool bump_right) {
  Create2Packet pk;
  pk.t = s.t;
  pk.distance_mm = distance_mm;
  pk.bump_left = bump_left ? 1 : 0;
  pk.bump_right = bump_right ? 1 : 0;

  for (int i = 0; i < 6; ++i) {
    const bool faulty =
        p.faulty_wall_sensors && (i == p.faulty_indices[0] || i == p.faulty_indices[1]);
    if (faulty) {
      pk.wall_signal[i] = 0.0;
      continue;
    }
    const double a = s.heading + deg(p.sensor_angles_deg[i]);
    const double ray = ray_to_walls(s.x, s.y, std::cos(a), std::sin(a), p.arena_width, p.arena_depth);
    const double shell = std::max(0.0, ray - p.robot_radius);
    pk.wall_signal[i] = ir_signal(shell, p);
  }

  // Dock frame: dock sits at (width/2, depth) and looks along (0, -1).
  const double dock_x = p.arena_width * 0.5;
  const double rx = s.x - dock_x;
  const double ry = s.y - p.arena_depth;
  const double dist = std::hypot(rx, ry);
  const double beta = std::atan2(rx, -ry);  // robot bearing off the dock axis; +x side positive
  const bool in_front = -ry > 1e-9;

  const double half = deg(p.dock_buoy_half_deg);
  const double overlap = deg(p.dock_buoy_overlap_deg);
  const bool left_buoy = in_front && dist <= p.dock_buoy_range && beta >= -overlap && beta <= half;
  const bool right_buoy = in_front && dist <= p.dock_buoy_range && beta >= -half && beta <= overlap;
  const bool force_field = in_front && dist <= p.dock_force_field_range;

  const double to_dock = std::atan2(-ry, -rx);
  const double phi = wrap_angle(to_dock - s.heading);  // dock bearing off heading, left positive
  const double fov = deg(p.receiver_fov_deg);
  const double rov = deg(p.receiver_overlap_deg);
  const bool rec_left = phi >= -rov && phi <= fov;
  const bool rec_right = phi >= -fov && phi <= rov;
  const bool rec_omni = std::abs(phi) <= deg(p.receiver_omni_fov_deg);

  const bool beams[3] = {left_buoy, force_field, right_buoy};
  const bool recs[3] = {rec_left, rec_omni, rec_right};
  for (int r = 0; r < 3; ++r)
    for (int b = 0; b < 3; ++b) pk.ir_dock[r * 3 + b] = (recs[r] && beams[b]) ? 1 : 0;

  const double face = (p.arena_depth - s.y) - p.robot_radius;
  const bool aligned = std::abs(wrap_angle(s.heading - kPi / 2.0)) <= deg(p.capture_heading_tol_deg);
  const bool in_cone =
      face <= p.capture_face_dist && std::abs(rx) <= p.capture_lateral_tol && aligned;
  pk.charging = in_cone ? 1 : 0;
  return pk;
}

Create2Packet create2_step(Create2State& s, const Create2Params& p, double left_mm_s,
                           double right_mm_s, double dt) {
  double l = std::clamp(left_mm_s, -p.wheel_limit, p.wheel_limit) / 1000.0;
  double r = std::clamp(right_mm_s, -p.wheel_limit, p.wheel_limit) / 1000.0;
  if (s.docked) l = r = 0.0;  // latched on the dock: actuation is ignored

  const double v = 0.5 * (l + r);
  const double w = (r - l) / p.wheel_base;
  const double x0 = s.x, y0 = s.y;

  double nx, ny, nh;
  if (std::abs(w) < 1e-9) {
    nx = s.x + v * dt * std::cos(s.heading);
    ny = s.y + v * dt * std::sin(s.heading);
    nh = s.heading;
  } else {
    const double radius = v / w;
    nh = s.heading + w * dt;
    nx = s.x + radius * (std::sin(nh) - std::sin(s.heading));
    ny = s.y - radius * (std::cos(nh) - std::cos(s.heading));
  }

  const double lo_x = p.robot_radius, hi_x = p.arena_width - p.robot_radius;
  const double lo_y = p.robot_radius, hi_y = p.arena_depth - p.robot_radius;
  bool bl = false, br = false;
  auto contact = [&](double wall_normal_angle) {
    // Bearing of the contact point relative to heading; front contacts only.
    const double c = wrap_angle(wall_normal_angle + kPi - nh);
    if (std::abs(c) <= deg(100.0)) {
      if (c >= -deg(10.0)) bl = true;
      if (c <= deg(10.0)) br = true;
    }
  };
  if (nx < lo_x) { nx = lo_x; contact(0.0); }
  if (nx > hi_x) { nx = hi_x; contact(kPi); }
  if (ny < lo_y) { ny = lo_y; contact(kPi / 2.0); }
  if (ny > hi_y) { ny = hi_y; contact(-kPi / 2.0); }

  s.x = nx;
  s.y = ny;
  s.heading = wrap_angle(nh);
  s.t += dt;

  const double ddx = s.x - x0, ddy = s.y - y0;
  const double along = ddx * std::cos(s.heading) + ddy * std::sin(s.heading);
  const double dist_mm = (along >= 0.0 ? 1.0 : -1.0) * std::hypot(ddx, ddy) * 1000.0;

  Create2Packet pk = create2_sense(s, p, dist_mm, bl, br);
  if (pk.charging && std::abs(v) < p.capture_latch_speed) s.docked = true;
  pk.charging = pk.charging || s.docked ? 1 : 0;
  return pk;
}

void create2_undock(Create2State& s) { s.docked = false; }

}  // namespace loopbench::sim
