#pragma once

namespace loopbench::sim {

// First-order servo in current-control mode: J dv/dt = kt*i - b*v. Terminal
// speed for a held current is kt*i/b; a 100 mA step from rest crosses a 1 rad
// target in well under 0.5 s.
struct DxlParams {
  double readwrite_cycle_s = 0.010;
  double kt = 0.0045;           // N.m per mA
  double damping = 0.002;       // N.m.s
  double inertia = 0.0008;      // kg.m^2
  double current_limit = 3000;  // mA, device-level cap
  double angle_lo = -3.14159265358979312;
  double angle_hi = 3.14159265358979312;
};

struct DxlState {
  double angle = 0.0;
  double velocity = 0.0;
  double t = 0.0;
};

struct DxlPacket {
  double t = 0.0;
  double angle = 0.0;
  double velocity = 0.0;
  double current = 0.0;  // applied command after the device cap
};

inline double dxl_terminal_velocity(const DxlParams& p, double current_mA) {
  return p.kt * current_mA / p.damping;
}

void dxl_step(DxlState& s, const DxlParams& p, double current_mA, double dt);

DxlPacket dxl_packet(const DxlState& s, double applied_current);

}  // namespace loopbench::sim
