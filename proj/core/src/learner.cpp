#include "loopbench/rl/learner.hpp"

#include <algorithm>

#include "loopbench/rl/ddpg.hpp"
#include "loopbench/rl/ppo.hpp"
#include "loopbench/rl/softq.hpp"
#include "loopbench/rl/trpo.hpp"

namespace loopbench::rl {

std::unique_ptr<Learner> make_learner(const tasks::TaskSpec& spec, const HyperConfig& cfg,
                                      std::uint64_t seed) {
  const int obs = spec.obs_dim;
  const int act = spec.action_dim;
  const long n = spec.cycles.episode_steps();
  const MlpSpec policy{obs, act, cfg.hidden, cfg.layers};
  const MlpSpec value{obs, 1, cfg.hidden, cfg.layers};
  switch (cfg.algo) {
    case Algo::Trpo: {
      TrpoConfig t;
      t.batch = cfg.batch;
      t.vf_step_size = cfg.vf_step_size;
      t.kl_delta = cfg.kl_delta;
      t.gamma = cfg.gamma_for(n);
      t.lambda = cfg.lambda_for(n);
      t.fvp_subsample_stride = std::max(1, cfg.batch / 512);
      return std::make_unique<TrpoLearner>(policy, value, t, seed);
    }
    case Algo::Ppo: {
      PpoConfig p;
      p.batch = cfg.batch;
      p.step_size = cfg.step_size;
      p.opt_batch = std::min(cfg.opt_batch, cfg.batch);
      p.gamma = cfg.gamma_for(n);
      p.lambda = cfg.lambda_for(n);
      return std::make_unique<PpoLearner>(policy, value, p, seed);
    }
    case Algo::SoftQ: {
      SoftQConfig s;
      s.batch = cfg.batch;
      s.step_size = cfg.step_size;
      s.epochs = cfg.epochs;
      s.reward_scale = cfg.reward_scale;
      s.gamma = cfg.gamma_for(n);
      return std::make_unique<SoftQLearner>(obs, act, cfg.hidden, cfg.layers, s, seed);
    }
    case Algo::Ddpg: {
      DdpgConfig d;
      d.batch = cfg.batch;
      d.step_size = cfg.step_size;
      d.sigma = cfg.sigma;
      d.reward_scale = cfg.reward_scale;
      d.gamma = cfg.gamma_for(n);
      return std::make_unique<DdpgLearner>(obs, act, cfg.hidden, cfg.layers, d, seed);
    }
  }
  throw std::invalid_argument("unknown algorithm in learner factory");
}

}  // namespace loopbench::rl
