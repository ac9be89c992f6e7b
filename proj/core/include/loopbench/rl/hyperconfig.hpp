#pragma once

#include <cstdint>
#include <limits>
#include <string>

#include "loopbench/config_kv.hpp"

namespace loopbench::rl {

enum class Algo { Trpo, Ppo, SoftQ, Ddpg };

Algo algo_from_string(const std::string& name);
std::string algo_to_string(Algo algo);

// Discount / trace-decay from an episode-relative time-scale factor:
// 1 - 1/(c N) for an episode of N steps. c at its sampling lower bound 10/N
// gives 0.9 for every task. Throws when c N <= 1 (the value would leave (0,1)).
double gamma_from_c(double c, long steps);

// One hyper-parameter configuration, either sampled (time-scale factors
// stored, values resolved against a task's episode length) or parsed from a
// result table row (resolved values only). Resolved gamma/lambda win over the
// factors when both are present.
struct HyperConfig {
  Algo algo = Algo::Trpo;
  int batch = 2048;  // update batch: rollout steps (trpo/ppo) or replay minibatch (softq/ddpg)

  double vf_step_size = 1e-3;  // trpo: value-net Adam rate
  double kl_delta = 1e-2;      // trpo: KL trust-region radius
  double step_size = 3e-4;     // ppo/softq/ddpg: Adam rate
  int opt_batch = 64;          // ppo: optimization minibatch
  int epochs = 1;              // softq: gradient updates per environment step
  double sigma = 0.1;          // ddpg: exploration noise, normalized action units
  double reward_scale = 1.0;   // softq/ddpg

  double c_gamma = std::numeric_limits<double>::quiet_NaN();
  double c_lambda = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double lambda = std::numeric_limits<double>::quiet_NaN();

  int layers = 2;
  int hidden = 64;
  std::uint64_t seed_net = 0;

  double gamma_for(long steps) const;
  double lambda_for(long steps) const;

  KvFile to_kv() const;
  static HyperConfig from_kv(const KvFile& kv);
};

}  // namespace loopbench::rl
