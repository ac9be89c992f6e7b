#include "loopbench/sim/ur5.hpp"

#include <algorithm>
#include <cmath>

namespace loopbench::sim {

void ur5_step(Ur5State& s, const Ur5Params& p, std::span<const double> cmd_vel, double dt) {
  for (std::size_t j = 0; j < 6; ++j) {
    const double cmd = j < cmd_vel.size() ? cmd_vel[j] : 0.0;
    const double target = std::clamp(cmd, -p.speed_limit, p.speed_limit);
    const double dv = std::clamp(target - s.v[j], -p.accel_limit * dt, p.accel_limit * dt);
    s.v[j] += dv;
    s.q[j] += s.v[j] * dt;
    if (s.q[j] <= p.joint_lo[j]) {
      s.q[j] = p.joint_lo[j];
      s.v[j] = 0.0;
    } else if (s.q[j] >= p.joint_hi[j]) {
      s.q[j] = p.joint_hi[j];
      s.v[j] = 0.0;
    }
  }
  s.t += dt;
}

Ur5Packet ur5_packet(const Ur5State& s) { return Ur5Packet{s.t, s.q, s.v}; }

Vec2 ur5_fingertip_planar(const Ur5Params& p, double q2, double q3) {
  return Vec2{p.link1 * std::cos(q2) + p.link2 * std::cos(q2 + q3),
              p.link1 * std::sin(q2) + p.link2 * std::sin(q2 + q3)};
}

namespace {

// Standard UR5 Denavit-Hartenberg constants.
constexpr double kD[6] = {0.089159, 0.0, 0.0, 0.10915, 0.09465, 0.0823};
constexpr double kA[6] = {0.0, -0.425, -0.39225, 0.0, 0.0, 0.0};
constexpr double kAlpha[6] = {1.570796326794896558, 0.0, 0.0, 1.570796326794896558,
                              -1.570796326794896558, 0.0};

struct Mat4 {
  double m[4][4];
};

Mat4 dh(double theta, double d, double a, double alpha) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  return Mat4{{{ct, -st * ca, st * sa, a * ct},
               {st, ct * ca, -ct * sa, a * st},
               {0.0, sa, ca, d},
               {0.0, 0.0, 0.0, 1.0}}};
}

Mat4 mul(const Mat4& x, const Mat4& y) {
  Mat4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += x.m[i][k] * y.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

}  // namespace

Vec3 ur5_fingertip(const std::array<double, 6>& q) {
  Mat4 t = dh(q[0], kD[0], kA[0], kAlpha[0]);
  for (int i = 1; i < 6; ++i) t = mul(t, dh(q[i], kD[i], kA[i], kAlpha[i]));
  return Vec3{t.m[0][3], t.m[1][3], t.m[2][3]};
}

bool ur5_ik_planar(const Ur5Params& p, const Vec2& target, double elbow_sign, double& q2, double& q3) {
  const double l1 = p.link1, l2 = p.link2;
  const double r2 = target[0] * target[0] + target[1] * target[1];
  double c3 = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  if (c3 < -1.0 || c3 > 1.0) return false;
  c3 = std::clamp(c3, -1.0, 1.0);
  const double s3 = (elbow_sign >= 0.0 ? 1.0 : -1.0) * std::sqrt(std::max(0.0, 1.0 - c3 * c3));
  q3 = std::atan2(s3, c3);
  q2 = std::atan2(target[1], target[0]) - std::atan2(l2 * s3, l1 + l2 * c3);
  return true;
}

std::array<double, 6> ur5_ik_position(const std::array<double, 6>& q0, const Vec3& target,
                                      int iters, double damping) {
  std::array<double, 6> q = q0;
  const double h = 1e-6;
  for (int it = 0; it < iters; ++it) {
    const Vec3 p = ur5_fingertip(q);
    const double ex = target[0] - p[0], ey = target[1] - p[1], ez = target[2] - p[2];
    if (ex * ex + ey * ey + ez * ez < 1e-12) break;
    double jac[3][6];
    for (int j = 0; j < 6; ++j) {
      std::array<double, 6> qp = q;
      qp[j] += h;
      const Vec3 pp = ur5_fingertip(qp);
      jac[0][j] = (pp[0] - p[0]) / h;
      jac[1][j] = (pp[1] - p[1]) / h;
      jac[2][j] = (pp[2] - p[2]) / h;
    }
    // dq = J^T (J J^T + damping^2 I)^-1 e, 3x3 solve by Cramer's rule.
    double a[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double s = 0.0;
        for (int j = 0; j < 6; ++j) s += jac[r][j] * jac[c][j];
        a[r][c] = s + (r == c ? damping * damping : 0.0);
      }
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (std::abs(det) < 1e-14) break;
    const double e[3] = {ex, ey, ez};
    double inv[3][3];
    inv[0][0] = (a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det;
    inv[0][1] = (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det;
    inv[0][2] = (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det;
    inv[1][0] = (a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det;
    inv[1][1] = (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det;
    inv[1][2] = (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det;
    inv[2][0] = (a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det;
    inv[2][1] = (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det;
    inv[2][2] = (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det;
    double w[3];
    for (int r = 0; r < 3; ++r) w[r] = inv[r][0] * e[0] + inv[r][1] * e[1] + inv[r][2] * e[2];
    for (int j = 0; j < 6; ++j) {
      double dq = 0.0;
      for (int r = 0; r < 3; ++r) dq += jac[r][j] * w[r];
      q[j] += dq;
    }
  }
  return q;
}

}  // namespace loopbench::sim
