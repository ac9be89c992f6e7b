#pragma once

#include <cstdint>
#include <vector>

#include "loopbench/rl/adam.hpp"
#include "loopbench/rl/gaussian_policy.hpp"
#include "loopbench/rl/learner.hpp"
#include "loopbench/rl/mlp.hpp"
#include "loopbench/rng.hpp"

namespace loopbench::rl {

struct TrpoConfig {
  int batch = 2048;
  double vf_step_size = 1e-3;
  double kl_delta = 1e-2;
  double gamma = 0.99;
  double lambda = 0.97;
  double cg_damping = 0.1;
  int cg_iters = 10;
  int line_search_steps = 10;
  int vf_epochs = 10;
  int vf_minibatch = 64;
  int fvp_subsample_stride = 1;  // curvature products use every k-th state
};

// Trust-region policy updates: natural gradient by conjugate gradient on the
// damped Fisher, step length from the KL radius, backtracking line search
// that requires KL <= 1.5 * delta and a surrogate improvement. A rejected
// line search leaves the policy unchanged and is counted as a fallback.
class TrpoLearner : public Learner {
 public:
  TrpoLearner(const MlpSpec& policy_spec, const MlpSpec& value_spec, const TrpoConfig& cfg,
              std::uint64_t seed);

  int action_dim() const override { return policy_.act_dim(); }
  std::vector<double> act(const tasks::StepView& view) override;
  void record(const tasks::Transition& t) override;
  std::vector<NamedArray> snapshot() const override;

  GaussianPolicy& policy() { return policy_; }
  Mlp& value_net() { return vf_; }

 private:
  void update();

  TrpoConfig cfg_;
  Rng init_rng_;  // consumed during construction, in member order
  GaussianPolicy policy_;
  Mlp vf_;
  Adam vf_opt_;
  Rng act_rng_, update_rng_;

  std::vector<double> obs_, acts_, rews_;  // rollout buffers, obs/acts row-major
  std::vector<std::uint8_t> dones_;
  std::vector<double> last_next_obs_;
  int filled_ = 0;
};

}  // namespace loopbench::rl
