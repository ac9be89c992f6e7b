#pragma once

#include <array>
#include <span>

namespace loopbench::sim {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

struct Ur5Params {
  double readwrite_cycle_s = 0.008;
  // Commanded joint speeds are slewed toward at this rate and hard-clamped
  // at the safety limit regardless of the command.
  double accel_limit = 10.0;      // rad/s^2
  double speed_limit = 3.0;       // rad/s
  double link1 = 0.425;           // planar chain for the 2-joint tasks
  double link2 = 0.392;
  std::array<double, 6> joint_lo{-6.28, -6.28, -6.28, -6.28, -6.28, -6.28};
  std::array<double, 6> joint_hi{6.28, 6.28, 6.28, 6.28, 6.28, 6.28};
  // Shoulder/elbow home giving a planar fingertip radius ~0.38 m so the
  // whole 0.7 x 0.5 m target box stays reachable.
  std::array<double, 6> home{0.0, 0.5602, 2.1773, 0.0, 0.0, 0.0};
  std::array<double, 6> home6{0.0, -1.2, 1.8, -0.6, -1.5708, 0.0};
};

struct Ur5State {
  std::array<double, 6> q{};
  std::array<double, 6> v{};
  double t = 0.0;
};

struct Ur5Packet {
  double t = 0.0;
  std::array<double, 6> q{};
  std::array<double, 6> v{};
};

// One device tick: slew actual joint speeds toward the commanded speeds,
// integrate, clamp to joint limits (zeroing velocity at a limit).
void ur5_step(Ur5State& s, const Ur5Params& p, std::span<const double> cmd_vel, double dt);

Ur5Packet ur5_packet(const Ur5State& s);

// Planar two-link fingertip for the shoulder/elbow pair.
Vec2 ur5_fingertip_planar(const Ur5Params& p, double q2, double q3);

// Full-chain fingertip position from the standard published UR5 DH table.
Vec3 ur5_fingertip(const std::array<double, 6>& q);

// Planar two-link inverse kinematics; elbow sign picks the solution branch.
// Returns false when the point is outside the reachable annulus.
bool ur5_ik_planar(const Ur5Params& p, const Vec2& target, double elbow_sign, double& q2, double& q3);

// Damped least-squares position-only IK for the full chain (finite-difference
// Jacobian); deterministic, returns the reached joint vector.
std::array<double, 6> ur5_ik_position(const std::array<double, 6>& q0, const Vec3& target,
                                      int iters = 200, double damping = 0.1);

}  // namespace loopbench::sim
