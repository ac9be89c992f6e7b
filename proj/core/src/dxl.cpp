#include "loopbench/sim/dxl.hpp"

#include <algorithm>

namespace loopbench::sim {

void dxl_step(DxlState& s, const DxlParams& p, double current_mA, double dt) {
  const double i = std::clamp(current_mA, -p.current_limit, p.current_limit);
  s.velocity += dt * (p.kt * i - p.damping * s.velocity) / p.inertia;
  s.angle += s.velocity * dt;
  if (s.angle <= p.angle_lo) {
    s.angle = p.angle_lo;
    s.velocity = 0.0;
  } else if (s.angle >= p.angle_hi) {
    s.angle = p.angle_hi;
    s.velocity = 0.0;
  }
  s.t += dt;
}

DxlPacket dxl_packet(const DxlState& s, double applied_current) {
  return DxlPacket{s.t, s.angle, s.velocity, applied_current};
}

}  // namespace loopbench::sim
