#pragma once

#include <array>
#include <cmath>
#include <span>

#include "loopbench/sim/create2.hpp"

namespace loopbench::tasks {

// Dense reacher reward: -distance plus a sharp Gaussian bonus at the target.
inline double ur_reacher_reward(double distance) {
  return -distance + std::exp(-100.0 * distance * distance);
}

inline double dxl_reacher_reward(double distance) { return -distance; }

// Signed forward progress summed over the newest packets of the cycle.
double mover_reward(std::span<const sim::Create2Packet> newest);

struct DockerRewardWeights {
  double a = 150.0;
  double b = 10.0;
  double c = 5.0;
  double d = 4.0;
  // Receiver x beam weights matching Create2Packet::ir_dock order; each
  // receiver focuses on its own buoy.
  std::array<double, 9> w{1.0, 0.5, 0.05, 0.65, 0.15, 0.65, 0.05, 0.5, 1.0};
};

struct DockerRewardParts {
  double X = 0.0;  // recency-weighted charging status over the n newest packets
  double Y = 0.0;  // minus the count of bump sensors seen within the cycle
  double Z = 0.0;  // mean signed displacement (mm) over the n newest packets
  double V = 0.0;  // weighted dock-beam visibility averaged over 20 packets
  double raw = 0.0;  // a*X + b*Y + c*Z + d*V, before action-cycle scaling
};

// packets are chronological (newest last) and hold at most max(n, 20)
// entries; missing history is treated as all-zero packets. The X recency
// weights are largest on the newest packet.
DockerRewardParts docker_reward(std::span<const sim::Create2Packet> packets, int n,
                                const DockerRewardWeights& w = {});

}  // namespace loopbench::tasks
