#include "loopbench/tasks/rewards.hpp"

#include <algorithm>

namespace loopbench::tasks {

double mover_reward(std::span<const sim::Create2Packet> newest) {
  const std::size_t n = std::min<std::size_t>(newest.size(), 10);
  double sum = 0.0;
  for (std::size_t i = newest.size() - n; i < newest.size(); ++i) sum += newest[i].distance_mm;
  return sum;
}

DockerRewardParts docker_reward(std::span<const sim::Create2Packet> packets, int n,
                                const DockerRewardWeights& w) {
  DockerRewardParts out;
  const auto at_newest = [&](int i) -> const sim::Create2Packet* {
    // i = 1 is the newest packet; missing history reads as zeros.
    const int idx = static_cast<int>(packets.size()) - i;
    return idx >= 0 ? &packets[idx] : nullptr;
  };

  double x = 0.0;
  bool bump_l = false, bump_r = false;
  double z = 0.0;
  for (int i = 1; i <= n; ++i) {
    const auto* pk = at_newest(i);
    if (!pk) continue;
    x += static_cast<double>(n - i + 1) * (pk->charging ? 1.0 : 0.0);
    bump_l = bump_l || pk->bump_left;
    bump_r = bump_r || pk->bump_right;
    z += pk->distance_mm;
  }
  out.X = 2.0 / (static_cast<double>(n) * (n + 1)) * x;
  out.Y = -((bump_l ? 1.0 : 0.0) + (bump_r ? 1.0 : 0.0));
  out.Z = z / n;

  double v = 0.0;
  for (int i = 1; i <= 20; ++i) {
    const auto* pk = at_newest(i);
    if (!pk) continue;
    for (int k = 0; k < 9; ++k) v += w.w[k] * (pk->ir_dock[k] ? 1.0 : 0.0);
  }
  out.V = v / 20.0;

  out.raw = w.a * out.X + w.b * out.Y + w.c * out.Z + w.d * out.V;
  return out;
}

}  // namespace loopbench::tasks
