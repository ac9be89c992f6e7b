#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "loopbench/rl/adam.hpp"
#include "loopbench/rl/learner.hpp"
#include "loopbench/rl/mlp.hpp"
#include "loopbench/rl/replay_buffer.hpp"
#include "loopbench/rng.hpp"

namespace loopbench::rl {

struct DdpgConfig {
  int batch = 64;  // replay minibatch
  double step_size = 1e-3;
  double sigma = 0.1;  // Gaussian exploration noise, normalized action units
  double reward_scale = 1.0;
  double gamma = 0.99;
  double polyak = 0.995;  // target = polyak * target + (1 - polyak) * online
  std::size_t replay_capacity = 100000;
};

// Deterministic policy gradient with Polyak-averaged target networks. The
// actor action is tanh(net(s)); exploration adds clipped Gaussian noise.
class DdpgLearner : public Learner {
 public:
  DdpgLearner(int obs_dim, int act_dim, int hidden, int layers, const DdpgConfig& cfg,
              std::uint64_t seed);

  int action_dim() const override { return act_dim_; }
  std::vector<double> act(const tasks::StepView& view) override;
  void record(const tasks::Transition& t) override;
  std::vector<NamedArray> snapshot() const override;

  Mlp& actor_net() { return actor_; }
  Mlp& critic_net() { return critic_; }
  const Mlp& actor_target() const { return actor_target_; }
  const Mlp& critic_target() const { return critic_target_; }

  // One ascent step on mean_row Q: grad_q writes dQ/da at the actor's action
  // for the given observation row. Exposed so the deterministic policy
  // gradient can be exercised against an analytic Q in isolation.
  static void actor_step(Mlp& actor, std::span<const double> obs, int rows,
                         const std::function<void(int row, std::span<const double> act,
                                                  std::span<double> dq_da)>& grad_q,
                         Adam& opt);

 private:
  void update_once();

  DdpgConfig cfg_;
  int obs_dim_, act_dim_;
  Rng init_rng_;  // consumed during construction, in member order
  Mlp actor_, critic_, actor_target_, critic_target_;
  Adam actor_opt_, critic_opt_;
  Rng act_rng_, update_rng_;
  ReplayBuffer replay_;
  ReplayBuffer::Batch batch_;
};

}  // namespace loopbench::rl
