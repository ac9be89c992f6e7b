#pragma once

#include <cmath>
#include <stdexcept>

namespace loopbench {

// Two-rate timing of one task: the device read-write loop runs every
// readwrite_cycle_s, the agent acts every action_cycle_s. In virtual-clock
// mode the action cycle must be an integer multiple of the read-write cycle.
struct CycleConfig {
  double action_cycle_s = 0.04;
  double readwrite_cycle_s = 0.01;
  double episode_seconds = 4.0;

  // Whole-step count; truncates fractional tails (30 s / 45 ms -> 666).
  int episode_steps() const { return whole_quotient(episode_seconds, action_cycle_s); }

  int packets_per_action() const {
    const double q = action_cycle_s / readwrite_cycle_s;
    const int k = whole_quotient(action_cycle_s, readwrite_cycle_s);
    if (std::abs(q - k) > 1e-6)
      throw std::invalid_argument("action cycle must be an integer multiple of the read-write cycle");
    return k;
  }

  static int whole_quotient(double total, double piece) {
    if (!(piece > 0.0) || !(total > 0.0)) throw std::invalid_argument("cycle times must be positive");
    return static_cast<int>(std::floor(total / piece + 1e-6));
  }
};

// Rewards are expressed per second of real interaction and scaled by the
// action cycle time so returns are comparable across cycle configurations.
inline double scale_reward(double raw, double action_cycle_s) { return raw * action_cycle_s; }

}  // namespace loopbench
