// Device simulator tests: six-joint arm integrator and kinematics, servo in
// current mode, differential-drive robot with arena walls, IR sensing, the
// docking controller, and the device parameter overrides.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "loopbench/rng.hpp"
#include "loopbench/sim/create2.hpp"
#include "loopbench/sim/device_params.hpp"
#include "loopbench/sim/dxl.hpp"
#include "loopbench/sim/seek_dock.hpp"
#include "loopbench/sim/ur5.hpp"

using namespace loopbench;
using namespace loopbench::sim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("arm at rest with zero command is a fixed point") {
  Ur5Params p;
  Ur5State s;
  s.q = p.home;
  const std::array<double, 6> cmd{};
  for (int i = 0; i < 100; ++i) ur5_step(s, p, cmd, p.readwrite_cycle_s);
  for (int j = 0; j < 6; ++j) {
    CHECK(s.q[j] == p.home[j]);
    CHECK(s.v[j] == 0.0);
  }
  CHECK(s.t == doctest::Approx(0.8));
}

TEST_CASE("arm velocity slews at the acceleration limit") {
  Ur5Params p;
  Ur5State s;
  const double dt = p.readwrite_cycle_s;
  std::array<double, 6> cmd{};
  cmd[1] = p.speed_limit;  // large step command
  ur5_step(s, p, cmd, dt);
  CHECK(s.v[1] == doctest::Approx(p.accel_limit * dt));
  CHECK(s.q[1] == doctest::Approx(p.accel_limit * dt * dt));
  // Saturates exactly at the speed limit, never beyond.
  for (int i = 0; i < 200; ++i) {
    ur5_step(s, p, cmd, dt);
    CHECK(s.v[1] <= p.speed_limit);
  }
  CHECK(s.v[1] == doctest::Approx(p.speed_limit));
}

TEST_CASE("arm at the commanded speed integrates position linearly") {
  Ur5Params p;
  Ur5State s;
  s.v[2] = 0.5;
  std::array<double, 6> cmd{};
  cmd[2] = 0.5;
  const double dt = p.readwrite_cycle_s;
  ur5_step(s, p, cmd, dt);
  CHECK(s.v[2] == 0.5);
  CHECK(s.q[2] == doctest::Approx(0.5 * dt));
}

TEST_CASE("arm commands beyond the speed limit are clamped") {
  Ur5Params p;
  Ur5State s;
  std::array<double, 6> cmd{};
  cmd[0] = 100.0;
  for (int i = 0; i < 100; ++i) ur5_step(s, p, cmd, p.readwrite_cycle_s);
  CHECK(s.v[0] == doctest::Approx(p.speed_limit));
}

TEST_CASE("arm joint limits clamp position and zero velocity") {
  Ur5Params p;
  Ur5State s;
  s.q[3] = p.joint_hi[3] - 1e-4;
  std::array<double, 6> cmd{};
  cmd[3] = p.speed_limit;
  for (int i = 0; i < 50; ++i) ur5_step(s, p, cmd, p.readwrite_cycle_s);
  CHECK(s.q[3] == p.joint_hi[3]);
  CHECK(s.v[3] == 0.0);

  Ur5State lo;
  lo.q[0] = p.joint_lo[0] + 1e-4;
  cmd = {};
  cmd[0] = -p.speed_limit;
  for (int i = 0; i < 50; ++i) ur5_step(lo, p, cmd, p.readwrite_cycle_s);
  CHECK(lo.q[0] == p.joint_lo[0]);
  CHECK(lo.v[0] == 0.0);
}

TEST_CASE("arm packet mirrors the state") {
  Ur5State s;
  s.q[1] = 0.25;
  s.v[4] = -0.5;
  s.t = 1.5;
  const Ur5Packet pk = ur5_packet(s);
  CHECK(pk.t == 1.5);
  CHECK(pk.q[1] == 0.25);
  CHECK(pk.v[4] == -0.5);
}

TEST_CASE("planar fingertip matches the two-link chain") {
  Ur5Params p;
  const Vec2 straight = ur5_fingertip_planar(p, 0.0, 0.0);
  CHECK(straight[0] == doctest::Approx(p.link1 + p.link2));
  CHECK(straight[1] == doctest::Approx(0.0));

  const Vec2 folded = ur5_fingertip_planar(p, 0.0, kPi);
  CHECK(folded[0] == doctest::Approx(p.link1 - p.link2));
  CHECK(std::abs(folded[1]) < 1e-12);

  // Mirror symmetry and reach bound.
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const double q2 = rng.uniform(-kPi, kPi), q3 = rng.uniform(-kPi, kPi);
    const Vec2 a = ur5_fingertip_planar(p, q2, q3);
    const Vec2 b = ur5_fingertip_planar(p, -q2, -q3);
    CHECK(a[0] == doctest::Approx(b[0]));
    CHECK(a[1] == doctest::Approx(-b[1]));
    CHECK(std::hypot(a[0], a[1]) <= p.link1 + p.link2 + 1e-12);
  }
}

TEST_CASE("planar inverse kinematics round-trips through the forward map") {
  Ur5Params p;
  Rng rng(3);
  const double r_min = std::abs(p.link1 - p.link2) + 0.01;
  const double r_max = p.link1 + p.link2 - 0.01;
  for (int i = 0; i < 2000; ++i) {
    const double r = rng.uniform(r_min, r_max);
    const double th = rng.uniform(-kPi, kPi);
    const Vec2 target{r * std::cos(th), r * std::sin(th)};
    for (double elbow : {1.0, -1.0}) {
      double q2 = 0.0, q3 = 0.0;
      REQUIRE(ur5_ik_planar(p, target, elbow, q2, q3));
      const Vec2 hit = ur5_fingertip_planar(p, q2, q3);
      CHECK(std::hypot(hit[0] - target[0], hit[1] - target[1]) < 1e-9);
      CHECK((elbow >= 0.0 ? q3 >= 0.0 : q3 <= 0.0));
    }
  }
  double q2 = 0.0, q3 = 0.0;
  CHECK(!ur5_ik_planar(p, Vec2{p.link1 + p.link2 + 0.01, 0.0}, 1.0, q2, q3));
  CHECK(!ur5_ik_planar(p, Vec2{0.001, 0.0}, 1.0, q2, q3));
}

TEST_CASE("full-chain fingertip respects base rotation symmetry") {
  Ur5Params p;
  const Vec3 at_home = ur5_fingertip(p.home6);
  CHECK(std::hypot(at_home[0], at_home[1], at_home[2]) < 1.4);  // inside total reach

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    std::array<double, 6> q{};
    for (double& x : q) x = rng.uniform(-kPi, kPi);
    const Vec3 a = ur5_fingertip(q);
    std::array<double, 6> q2 = q;
    const double phi = rng.uniform(-kPi, kPi);
    q2[0] += phi;
    const Vec3 b = ur5_fingertip(q2);
    // Rotating the base joint spins the tip about z: radius and height hold.
    CHECK(std::hypot(a[0], a[1]) == doctest::Approx(std::hypot(b[0], b[1])));
    CHECK(a[2] == doctest::Approx(b[2]));
  }
}

TEST_CASE("damped least-squares IK reaches nearby targets") {
  Ur5Params p;
  const Vec3 start = ur5_fingertip(p.home6);
  const Vec3 target{start[0] + 0.03, start[1] - 0.02, start[2] + 0.04};
  const std::array<double, 6> q = ur5_ik_position(p.home6, target);
  const Vec3 hit = ur5_fingertip(q);
  CHECK(std::hypot(hit[0] - target[0], hit[1] - target[1], hit[2] - target[2]) < 1e-3);
}

TEST_CASE("servo with zero current from rest stays put") {
  DxlParams p;
  DxlState s;
  for (int i = 0; i < 100; ++i) dxl_step(s, p, 0.0, p.readwrite_cycle_s);
  CHECK(s.angle == 0.0);
  CHECK(s.velocity == 0.0);
  CHECK(s.t == doctest::Approx(1.0));
}

TEST_CASE("servo speed approaches the terminal velocity monotonically") {
  DxlParams p;
  DxlState s;
  const double i_hold = 100.0;
  const double v_term = dxl_terminal_velocity(p, i_hold);
  CHECK(v_term == doctest::Approx(0.0045 * 100.0 / 0.002));
  double prev = 0.0;
  p.angle_hi = 1e9;  // disable the position clamp for this speed test
  p.angle_lo = -1e9;
  for (int i = 0; i < 500; ++i) {
    dxl_step(s, p, i_hold, p.readwrite_cycle_s);
    CHECK(s.velocity > prev);  // strictly increasing toward terminal
    CHECK(s.velocity <= v_term);
    prev = s.velocity;
  }
  CHECK(s.velocity == doctest::Approx(v_term).epsilon(1e-3));
}

TEST_CASE("servo dynamics are sign-symmetric") {
  DxlParams p;
  DxlState a, b;
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double cur = rng.uniform(0.0, 100.0);
    dxl_step(a, p, cur, p.readwrite_cycle_s);
    dxl_step(b, p, -cur, p.readwrite_cycle_s);
    CHECK(a.angle == -b.angle);
    CHECK(a.velocity == -b.velocity);
  }
}

TEST_CASE("servo clamps current at the device cap and angle at the stops") {
  DxlParams p;
  DxlState a, b;
  dxl_step(a, p, p.current_limit, 0.01);
  dxl_step(b, p, p.current_limit * 10.0, 0.01);
  CHECK(a.velocity == b.velocity);

  DxlState s;
  s.angle = p.angle_hi - 1e-6;
  s.velocity = 10.0;
  dxl_step(s, p, 500.0, 0.01);
  CHECK(s.angle == p.angle_hi);
  CHECK(s.velocity == 0.0);

  const DxlPacket pk = dxl_packet(s, 42.0);
  CHECK(pk.angle == s.angle);
  CHECK(pk.current == 42.0);
}

TEST_CASE("ir signal inverts to distance across the sensing range") {
  Create2Params p;
  CHECK(ir_signal(p.ir_d0, p) == doctest::Approx(p.ir_s_raw_max));
  for (double d = 0.02; d <= 0.60; d += 0.005) {
    CHECK(signal_to_distance(ir_signal(d, p), p) == doctest::Approx(d).epsilon(1e-9));
  }
  CHECK(signal_to_distance(ir_signal(0.10, p), p) == doctest::Approx(0.10).epsilon(1e-9));
  // Strictly decreasing.
  double prev = ir_signal(0.02, p);
  for (double d = 0.025; d <= 0.60; d += 0.005) {
    const double s = ir_signal(d, p);
    CHECK(s < prev);
    prev = s;
  }
  // Saturation outside the range.
  CHECK(ir_signal(0.01, p) == ir_signal(0.02, p));
  CHECK(ir_signal(0.90, p) == ir_signal(0.60, p));
  CHECK(signal_to_distance(0.0, p) == doctest::Approx(0.60));
  CHECK(signal_to_distance(1e9, p) == doctest::Approx(0.02));
}

TEST_CASE("wrap_angle lands in (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kPi + 0.1) == doctest::Approx(-kPi + 0.1));
  CHECK(wrap_angle(7.0 * kPi) == doctest::Approx(kPi));
  Rng rng(6);
  for (int i = 0; i < 10000; ++i) {
    const double w = wrap_angle(rng.uniform(-50.0, 50.0));
    CHECK(w > -kPi - 1e-12);
    CHECK(w <= kPi + 1e-12);
  }
}

TEST_CASE("robot drives straight and rotates in place as commanded") {
  Create2Params p;
  Create2State s;  // center, heading +x
  const double dt = p.readwrite_cycle_s;
  create2_step(s, p, 200.0, 200.0, dt);
  CHECK(s.x == doctest::Approx(0.457 + 0.2 * dt));
  CHECK(s.y == doctest::Approx(0.381));
  CHECK(s.heading == 0.0);

  Create2State r;
  const Create2Packet pk = create2_step(r, p, -100.0, 100.0, dt);
  CHECK(r.x == doctest::Approx(0.457));
  CHECK(r.y == doctest::Approx(0.381));
  CHECK(r.heading == doctest::Approx(2.0 * 0.1 * dt / p.wheel_base));
  CHECK(pk.distance_mm == doctest::Approx(0.0).scale(1.0));

  // Wheel speeds clamp at the device limit.
  Create2State f;
  create2_step(f, p, 5000.0, 5000.0, dt);
  CHECK(f.x == doctest::Approx(0.457 + (p.wheel_limit / 1000.0) * dt));
}

TEST_CASE("forward wall contact clamps the pose and raises bumps") {
  Create2Params p;
  Create2State s;
  s.x = p.arena_width - p.robot_radius - 0.001;
  s.heading = 0.0;
  const Create2Packet pk = create2_step(s, p, 500.0, 500.0, p.readwrite_cycle_s);
  CHECK(s.x == p.arena_width - p.robot_radius);
  CHECK(pk.bump_left == 1);
  CHECK(pk.bump_right == 1);
  CHECK(create2_pose_inside(s, p));

  // Backing into a wall clamps but does not bump (rear contact).
  Create2State b;
  b.x = p.robot_radius + 0.001;
  b.heading = 0.0;
  const Create2Packet bk = create2_step(b, p, -500.0, -500.0, p.readwrite_cycle_s);
  CHECK(b.x == p.robot_radius);
  CHECK(bk.bump_left == 0);
  CHECK(bk.bump_right == 0);

  // Glancing contact at a side wall bumps only one side.
  Create2State g;
  g.y = p.arena_depth - p.robot_radius - 0.0005;
  g.heading = kPi / 4.0;  // wall ahead-left
  const Create2Packet gk = create2_step(g, p, 400.0, 400.0, p.readwrite_cycle_s);
  CHECK(gk.bump_left == 1);
  CHECK(gk.bump_right == 0);
}

TEST_CASE("wall signals follow the shell distance and faulty sensors read zero") {
  Create2Params p;
  Create2State s;
  s.x = p.arena_width / 2.0;
  s.y = 0.25;
  s.heading = -kPi / 2.0;  // straight at the near wall
  const Create2Packet pk = create2_sense(s, p);
  // The two +-10 degree sensors see nearly the same range; the 60 degree
  // pair sees farther, so smaller signals.
  CHECK(pk.wall_signal[2] == doctest::Approx(pk.wall_signal[3]));
  CHECK(pk.wall_signal[0] < pk.wall_signal[2]);
  CHECK(pk.wall_signal[5] < pk.wall_signal[3]);
  const double ray = 0.25 / std::cos(10.0 * kPi / 180.0);
  CHECK(pk.wall_signal[2] == doctest::Approx(ir_signal(ray - p.robot_radius, p)).epsilon(1e-6));

  Create2Params faulty = p;
  faulty.faulty_wall_sensors = true;
  const Create2Packet fk = create2_sense(s, faulty);
  CHECK(fk.wall_signal[1] == 0.0);
  CHECK(fk.wall_signal[4] == 0.0);
  CHECK(fk.wall_signal[2] > 0.0);
}

TEST_CASE("dock beams and receivers follow the bearing geometry") {
  Create2Params p;
  Create2State s;
  s.x = p.arena_width / 2.0;  // on the dock axis
  s.y = p.arena_depth - 0.3;  // inside the force field
  s.heading = kPi / 2.0;      // facing the dock
  const Create2Packet pk = create2_sense(s, p);
  for (int i = 0; i < 9; ++i) CHECK(pk.ir_dock[i] == 1);  // all beams, all receivers

  // Outside the force field but inside buoy range: the middle beam drops.
  Create2State far = s;
  far.y = p.arena_depth - 0.7;
  const Create2Packet fk = create2_sense(far, p);
  for (int r = 0; r < 3; ++r) {
    CHECK(fk.ir_dock[r * 3 + 0] == 1);
    CHECK(fk.ir_dock[r * 3 + 1] == 0);
    CHECK(fk.ir_dock[r * 3 + 2] == 1);
  }

  // Off to the +x side beyond the overlap: only the left buoy is visible.
  Create2State side = s;
  side.x = p.arena_width / 2.0 + 0.25;
  side.y = p.arena_depth - 0.35;
  const Create2Packet sk = create2_sense(side, p);
  bool any_left = false, any_right = false;
  for (int r = 0; r < 3; ++r) {
    any_left = any_left || sk.ir_dock[r * 3 + 0];
    any_right = any_right || sk.ir_dock[r * 3 + 2];
  }
  CHECK(any_left);
  CHECK(!any_right);

  // Facing away from the dock, only the omni receiver can see anything.
  Create2State away = s;
  away.heading = -kPi / 2.0;
  const Create2Packet ak = create2_sense(away, p);
  CHECK(ak.ir_dock[0] == 0);
  CHECK(ak.ir_dock[6] == 0);
}

TEST_CASE("charging cone and latch behave like the dock capture") {
  Create2Params p;
  Create2State s;
  s.x = p.arena_width / 2.0 + 0.02;
  s.y = p.arena_depth - p.robot_radius - 0.03;  // face within 5 cm
  s.heading = kPi / 2.0 + 0.05;                 // within the 10 degree cone
  CHECK(create2_sense(s, p).charging == 1);

  Create2State off = s;
  off.heading = kPi / 2.0 + 0.5;  // heading off by ~29 degrees
  CHECK(create2_sense(off, p).charging == 0);
  off = s;
  off.x = p.arena_width / 2.0 + 0.10;  // too far off axis
  CHECK(create2_sense(off, p).charging == 0);

  // Slow approach latches; wheel commands are then ignored until undocked.
  Create2Packet pk = create2_step(s, p, 10.0, 10.0, p.readwrite_cycle_s);
  CHECK(pk.charging == 1);
  CHECK(s.docked);
  const double x0 = s.x, y0 = s.y;
  pk = create2_step(s, p, 500.0, 500.0, p.readwrite_cycle_s);
  CHECK(s.x == x0);
  CHECK(s.y == y0);
  CHECK(pk.charging == 1);  // latched reports charging regardless
  create2_undock(s);
  CHECK(!s.docked);
  create2_step(s, p, -200.0, -200.0, p.readwrite_cycle_s);
  CHECK(s.y < y0);

  // A fast drive-through does not latch.
  Create2State fast;
  fast.x = p.arena_width / 2.0;
  fast.y = p.arena_depth - p.robot_radius - 0.04;
  fast.heading = kPi / 2.0;
  create2_step(fast, p, 100.0, 100.0, p.readwrite_cycle_s);
  CHECK(!fast.docked);
}

TEST_CASE("docking controller docks from the axis and from the center") {
  Create2Params p;
  const double dt = p.readwrite_cycle_s;

  auto try_dock = [&](Create2State s, double seconds) {
    SeekDockController ctrl(p);
    WheelCmd cmd;
    const int ticks = static_cast<int>(seconds / dt);
    for (int i = 0; i < ticks && !s.docked; ++i) {
      const Create2Packet pk = create2_step(s, p, cmd.left_mm_s, cmd.right_mm_s, dt);
      cmd = ctrl.step(pk, dt);
      CHECK(std::abs(cmd.left_mm_s) <= p.wheel_limit);
      CHECK(std::abs(cmd.right_mm_s) <= p.wheel_limit);
    }
    return s.docked;
  };

  Create2State axis;
  axis.x = p.arena_width / 2.0;
  axis.y = p.arena_depth - 0.45;
  axis.heading = kPi / 2.0;
  CHECK(try_dock(axis, 20.0));

  Create2State center;  // default pose, facing away from the dock axis
  CHECK(try_dock(center, 20.0));
}

TEST_CASE("device parameter overrides round-trip through kv") {
  DeviceParams d;
  const KvFile kv = d.to_kv();
  CHECK(kv.get_double("dxl.kt") == 0.0045);
  CHECK(kv.get_double("create2.arena_width") == 0.914);
  CHECK(kv.get_double("ur5.home.1") == 0.5602);

  KvFile edit;
  edit.set_double("dxl.kt", 0.006);
  edit.set_bool("create2.faulty_wall_sensors", true);
  edit.set_double("ur5.speed_limit", 2.0);
  DeviceParams d2 = DeviceParams::from_kv(edit);
  CHECK(d2.dxl.kt == 0.006);
  CHECK(d2.create2.faulty_wall_sensors);
  CHECK(d2.ur5.speed_limit == 2.0);
  CHECK(d2.dxl.damping == d.dxl.damping);  // untouched keys keep defaults

  DeviceParams d3 = DeviceParams::from_kv(d2.to_kv());
  CHECK(d3.to_kv().serialize() == d2.to_kv().serialize());
}
