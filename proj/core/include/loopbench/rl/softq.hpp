#pragma once

#include <cstdint>
#include <vector>

#include "loopbench/rl/adam.hpp"
#include "loopbench/rl/learner.hpp"
#include "loopbench/rl/mlp.hpp"
#include "loopbench/rl/replay_buffer.hpp"
#include "loopbench/rng.hpp"

namespace loopbench::rl {

struct SoftQConfig {
  int batch = 64;  // replay minibatch
  double step_size = 3e-4;
  int epochs = 1;  // gradient updates per environment step
  double reward_scale = 1.0;
  double gamma = 0.99;
  int value_samples = 16;  // uniform action draws behind the soft value
  int particles = 16;      // Stein particles for the sampler update
  int target_sync = 1000;  // gradient steps between hard target syncs
  std::size_t replay_capacity = 100000;
};

// Soft value of a state under Q with unit temperature, estimated from uniform
// action samples over the [-1,1]^d box: V(s) = log mean_j exp Q(s, a_j).
// Temperature is folded into Q's units (rewards are pre-scaled), so with one
// sample V(s) = Q(s, a_1) exactly.
double soft_value(const Mlp& q, std::span<const double> obs, int samples, Rng& rng);

// Maximum-entropy Q-learning on reward_scale * reward (the scale acts as an
// inverse temperature). The sampler network maps observation + Gaussian noise
// to a tanh-squashed action and is fit by amortized Stein variational descent
// toward exp(Q).
class SoftQLearner : public Learner {
 public:
  SoftQLearner(int obs_dim, int act_dim, int hidden, int layers, const SoftQConfig& cfg,
               std::uint64_t seed);

  int action_dim() const override { return act_dim_; }
  std::vector<double> act(const tasks::StepView& view) override;
  void record(const tasks::Transition& t) override;
  std::vector<NamedArray> snapshot() const override;

  Mlp& q_net() { return q_; }
  Mlp& sampler_net() { return sampler_; }

 private:
  void update_once();
  std::vector<double> sample_action(std::span<const double> obs, Rng& rng,
                                    Mlp::Cache* cache = nullptr, std::vector<double>* pre = nullptr);

  SoftQConfig cfg_;
  int obs_dim_, act_dim_;
  Rng init_rng_;  // consumed during construction, in member order
  Mlp q_, sampler_, q_target_;
  Adam q_opt_, sampler_opt_;
  Rng act_rng_, update_rng_;
  ReplayBuffer replay_;
  long grad_steps_ = 0;
  ReplayBuffer::Batch batch_;
};

}  // namespace loopbench::rl
