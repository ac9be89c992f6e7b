#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace loopbench::rl {

struct GaeResult {
  std::vector<double> advantages;
  std::vector<double> returns;  // advantage + value, the value-fit target
};

// Generalized advantage estimation over a batch that may span several
// episodes. values carries one extra trailing entry: the value of the state
// after the last step, used as bootstrap when that step was not terminal.
inline GaeResult compute_gae(std::span<const double> rewards, std::span<const double> values,
                             std::span<const std::uint8_t> dones, double gamma, double lambda) {
  const std::size_t n = rewards.size();
  if (n == 0) throw std::invalid_argument("gae: empty trajectory");
  if (values.size() != n + 1 || dones.size() != n)
    throw std::invalid_argument("gae: rewards/values/dones sizes disagree");
  GaeResult r;
  r.advantages.assign(n, 0.0);
  r.returns.assign(n, 0.0);
  double adv = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    const double cont = dones[i] ? 0.0 : 1.0;
    const double delta = rewards[i] + gamma * cont * values[i + 1] - values[i];
    adv = delta + gamma * lambda * cont * adv;
    r.advantages[i] = adv;
    r.returns[i] = adv + values[i];
  }
  return r;
}

// In-place standardization to zero mean and (nearly) unit variance.
inline void normalize_advantages(std::span<double> adv) {
  if (adv.empty()) return;
  double mean = 0.0;
  for (double a : adv) mean += a;
  mean /= static_cast<double>(adv.size());
  double var = 0.0;
  for (double a : adv) var += (a - mean) * (a - mean);
  var /= static_cast<double>(adv.size());
  const double scale = 1.0 / (std::sqrt(var) + 1e-8);
  for (double& a : adv) a = (a - mean) * scale;
}

}  // namespace loopbench::rl
