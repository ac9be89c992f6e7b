#include "loopbench/sim/device_params.hpp"

#include <string>

namespace loopbench::sim {

namespace {

void put_array6(KvFile& kv, const std::string& key, const std::array<double, 6>& a) {
  for (int i = 0; i < 6; ++i) kv.set_double(key + "." + std::to_string(i), a[i]);
}

void get_array6(const KvFile& kv, const std::string& key, std::array<double, 6>& a) {
  for (int i = 0; i < 6; ++i) a[i] = kv.get_double(key + "." + std::to_string(i), a[i]);
}

}  // namespace

KvFile DeviceParams::to_kv() const {
  KvFile kv;
  kv.set_double("ur5.readwrite_cycle_s", ur5.readwrite_cycle_s);
  kv.set_double("ur5.accel_limit", ur5.accel_limit);
  kv.set_double("ur5.speed_limit", ur5.speed_limit);
  kv.set_double("ur5.link1", ur5.link1);
  kv.set_double("ur5.link2", ur5.link2);
  put_array6(kv, "ur5.joint_lo", ur5.joint_lo);
  put_array6(kv, "ur5.joint_hi", ur5.joint_hi);
  put_array6(kv, "ur5.home", ur5.home);
  put_array6(kv, "ur5.home6", ur5.home6);

  kv.set_double("dxl.readwrite_cycle_s", dxl.readwrite_cycle_s);
  kv.set_double("dxl.kt", dxl.kt);
  kv.set_double("dxl.damping", dxl.damping);
  kv.set_double("dxl.inertia", dxl.inertia);
  kv.set_double("dxl.current_limit", dxl.current_limit);
  kv.set_double("dxl.angle_lo", dxl.angle_lo);
  kv.set_double("dxl.angle_hi", dxl.angle_hi);

  kv.set_double("create2.readwrite_cycle_s", create2.readwrite_cycle_s);
  kv.set_double("create2.wheel_base", create2.wheel_base);
  kv.set_double("create2.wheel_limit", create2.wheel_limit);
  kv.set_double("create2.robot_radius", create2.robot_radius);
  kv.set_double("create2.arena_width", create2.arena_width);
  kv.set_double("create2.arena_depth", create2.arena_depth);
  put_array6(kv, "create2.sensor_angles_deg", create2.sensor_angles_deg);
  kv.set_bool("create2.faulty_wall_sensors", create2.faulty_wall_sensors);
  kv.set_int("create2.faulty_index_a", create2.faulty_indices[0]);
  kv.set_int("create2.faulty_index_b", create2.faulty_indices[1]);
  kv.set_double("create2.ir_d0", create2.ir_d0);
  kv.set_double("create2.ir_s_raw_max", create2.ir_s_raw_max);
  kv.set_double("create2.ir_range_min", create2.ir_range_min);
  kv.set_double("create2.ir_range_max", create2.ir_range_max);
  kv.set_double("create2.dock_buoy_range", create2.dock_buoy_range);
  kv.set_double("create2.dock_buoy_half_deg", create2.dock_buoy_half_deg);
  kv.set_double("create2.dock_buoy_overlap_deg", create2.dock_buoy_overlap_deg);
  kv.set_double("create2.dock_force_field_range", create2.dock_force_field_range);
  kv.set_double("create2.receiver_fov_deg", create2.receiver_fov_deg);
  kv.set_double("create2.receiver_overlap_deg", create2.receiver_overlap_deg);
  kv.set_double("create2.receiver_omni_fov_deg", create2.receiver_omni_fov_deg);
  kv.set_double("create2.capture_face_dist", create2.capture_face_dist);
  kv.set_double("create2.capture_lateral_tol", create2.capture_lateral_tol);
  kv.set_double("create2.capture_heading_tol_deg", create2.capture_heading_tol_deg);
  kv.set_double("create2.capture_latch_speed", create2.capture_latch_speed);
  return kv;
}

void DeviceParams::apply_kv(const KvFile& kv) {
  ur5.readwrite_cycle_s = kv.get_double("ur5.readwrite_cycle_s", ur5.readwrite_cycle_s);
  ur5.accel_limit = kv.get_double("ur5.accel_limit", ur5.accel_limit);
  ur5.speed_limit = kv.get_double("ur5.speed_limit", ur5.speed_limit);
  ur5.link1 = kv.get_double("ur5.link1", ur5.link1);
  ur5.link2 = kv.get_double("ur5.link2", ur5.link2);
  get_array6(kv, "ur5.joint_lo", ur5.joint_lo);
  get_array6(kv, "ur5.joint_hi", ur5.joint_hi);
  get_array6(kv, "ur5.home", ur5.home);
  get_array6(kv, "ur5.home6", ur5.home6);

  dxl.readwrite_cycle_s = kv.get_double("dxl.readwrite_cycle_s", dxl.readwrite_cycle_s);
  dxl.kt = kv.get_double("dxl.kt", dxl.kt);
  dxl.damping = kv.get_double("dxl.damping", dxl.damping);
  dxl.inertia = kv.get_double("dxl.inertia", dxl.inertia);
  dxl.current_limit = kv.get_double("dxl.current_limit", dxl.current_limit);
  dxl.angle_lo = kv.get_double("dxl.angle_lo", dxl.angle_lo);
  dxl.angle_hi = kv.get_double("dxl.angle_hi", dxl.angle_hi);

  create2.readwrite_cycle_s = kv.get_double("create2.readwrite_cycle_s", create2.readwrite_cycle_s);
  create2.wheel_base = kv.get_double("create2.wheel_base", create2.wheel_base);
  create2.wheel_limit = kv.get_double("create2.wheel_limit", create2.wheel_limit);
  create2.robot_radius = kv.get_double("create2.robot_radius", create2.robot_radius);
  create2.arena_width = kv.get_double("create2.arena_width", create2.arena_width);
  create2.arena_depth = kv.get_double("create2.arena_depth", create2.arena_depth);
  get_array6(kv, "create2.sensor_angles_deg", create2.sensor_angles_deg);
  create2.faulty_wall_sensors = kv.get_bool("create2.faulty_wall_sensors", create2.faulty_wall_sensors);
  create2.faulty_indices[0] = static_cast<int>(kv.get_int("create2.faulty_index_a", create2.faulty_indices[0]));
  create2.faulty_indices[1] = static_cast<int>(kv.get_int("create2.faulty_index_b", create2.faulty_indices[1]));
  create2.ir_d0 = kv.get_double("create2.ir_d0", create2.ir_d0);
  create2.ir_s_raw_max = kv.get_double("create2.ir_s_raw_max", create2.ir_s_raw_max);
  create2.ir_range_min = kv.get_double("create2.ir_range_min", create2.ir_range_min);
  create2.ir_range_max = kv.get_double("create2.ir_range_max", create2.ir_range_max);
  create2.dock_buoy_range = kv.get_double("create2.dock_buoy_range", create2.dock_buoy_range);
  create2.dock_buoy_half_deg = kv.get_double("create2.dock_buoy_half_deg", create2.dock_buoy_half_deg);
  create2.dock_buoy_overlap_deg =
      kv.get_double("create2.dock_buoy_overlap_deg", create2.dock_buoy_overlap_deg);
  create2.dock_force_field_range =
      kv.get_double("create2.dock_force_field_range", create2.dock_force_field_range);
  create2.receiver_fov_deg = kv.get_double("create2.receiver_fov_deg", create2.receiver_fov_deg);
  create2.receiver_overlap_deg =
      kv.get_double("create2.receiver_overlap_deg", create2.receiver_overlap_deg);
  create2.receiver_omni_fov_deg =
      kv.get_double("create2.receiver_omni_fov_deg", create2.receiver_omni_fov_deg);
  create2.capture_face_dist = kv.get_double("create2.capture_face_dist", create2.capture_face_dist);
  create2.capture_lateral_tol =
      kv.get_double("create2.capture_lateral_tol", create2.capture_lateral_tol);
  create2.capture_heading_tol_deg =
      kv.get_double("create2.capture_heading_tol_deg", create2.capture_heading_tol_deg);
  create2.capture_latch_speed =
      kv.get_double("create2.capture_latch_speed", create2.capture_latch_speed);
}

}  // namespace loopbench::sim
