#pragma once

#include <cstdint>
#include <vector>

#include "loopbench/rl/adam.hpp"
#include "loopbench/rl/gaussian_policy.hpp"
#include "loopbench/rl/learner.hpp"
#include "loopbench/rl/mlp.hpp"
#include "loopbench/rng.hpp"

namespace loopbench::rl {

struct PpoConfig {
  int batch = 2048;
  double step_size = 3e-4;
  int opt_batch = 64;
  double gamma = 0.99;
  double lambda = 0.97;
  double clip = 0.2;
  int epochs = 10;
};

// Clipped-surrogate policy optimization: after each rollout batch, several
// epochs of Adam on shuffled minibatches of the pessimistic clipped objective,
// with the value net regressed on the same minibatches at the same rate.
class PpoLearner : public Learner {
 public:
  PpoLearner(const MlpSpec& policy_spec, const MlpSpec& value_spec, const PpoConfig& cfg,
             std::uint64_t seed);

  int action_dim() const override { return policy_.act_dim(); }
  std::vector<double> act(const tasks::StepView& view) override;
  void record(const tasks::Transition& t) override;
  std::vector<NamedArray> snapshot() const override;

  GaussianPolicy& policy() { return policy_; }
  Mlp& value_net() { return vf_; }

 private:
  void update();

  PpoConfig cfg_;
  Rng init_rng_;  // consumed during construction, in member order
  GaussianPolicy policy_;
  Mlp vf_;
  Adam pol_opt_, vf_opt_;
  Rng act_rng_, update_rng_;

  std::vector<double> obs_, acts_, rews_;
  std::vector<std::uint8_t> dones_;
  std::vector<double> last_next_obs_;
  int filled_ = 0;
};

// Per-sample clipped surrogate term, exposed for direct unit checks:
// min(ratio * adv, clamp(ratio, 1-clip, 1+clip) * adv) with
// ratio = exp(logp - logp_old). d_logp receives its derivative w.r.t. logp.
double ppo_clip_objective(double logp, double logp_old, double adv, double clip, double* d_logp);

}  // namespace loopbench::rl
