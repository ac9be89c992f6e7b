#include "loopbench/search/space.hpp"

#include <cmath>

#include "loopbench/rl/mlp.hpp"

namespace loopbench::search {

namespace {

long worst_network_weights(rl::Algo algo, const tasks::TaskSpec& spec, int layers, int hidden) {
  const int obs = spec.obs_dim;
  const int act = spec.action_dim;
  long worst = 0;
  const auto consider = [&](int in, int out, long extra) {
    const long n = rl::mlp_weight_count(rl::MlpSpec{in, out, hidden, layers}) + extra;
    worst = std::max(worst, n);
  };
  switch (algo) {
    case rl::Algo::Trpo:
    case rl::Algo::Ppo:
      consider(obs, act, act);  // policy mean plus per-dim log-std
      consider(obs, 1, 0);      // value
      break;
    case rl::Algo::SoftQ:
      consider(obs + act, 1, 0);    // action value
      consider(obs + act, act, 0);  // sampler (observation + noise in)
      break;
    case rl::Algo::Ddpg:
      consider(obs, act, 0);      // actor
      consider(obs + act, 1, 0);  // critic
      break;
  }
  return worst;
}

double log_uniform(Rng& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, rng.uniform(lo_exp, hi_exp));
}

}  // namespace

int hidden_cap_exponent(rl::Algo algo, const tasks::TaskSpec& spec, int layers,
                        long weight_budget) {
  int x = 3;
  while (worst_network_weights(algo, spec, layers, 1 << (x + 1)) <= weight_budget) ++x;
  return x;
}

rl::HyperConfig sample_config(rl::Algo algo, const tasks::TaskSpec& spec, Rng& rng) {
  rl::HyperConfig c;
  c.algo = algo;
  const long n = spec.cycles.episode_steps();
  const double c_lo = std::log10(10.0 / static_cast<double>(n));

  // Draws follow the range tables top to bottom so a seed pins the set.
  c.batch = 1 << rng.uniform_int(8, 13);
  switch (algo) {
    case rl::Algo::Trpo:
      c.vf_step_size = log_uniform(rng, -5.0, -2.0);
      c.kl_delta = log_uniform(rng, -2.5, -0.5);
      c.c_gamma = log_uniform(rng, c_lo, 1.5);
      c.c_lambda = log_uniform(rng, c_lo, 1.5);
      break;
    case rl::Algo::Ppo: {
      c.step_size = log_uniform(rng, -5.0, -2.0);
      int batch_exp = 0;
      while ((1 << (batch_exp + 1)) <= c.batch) ++batch_exp;
      c.opt_batch = 1 << rng.uniform_int(3, batch_exp);
      c.c_gamma = log_uniform(rng, c_lo, 1.5);
      c.c_lambda = log_uniform(rng, c_lo, 1.5);
      break;
    }
    case rl::Algo::SoftQ:
      c.step_size = log_uniform(rng, -5.0, -2.0);
      c.epochs = 1 << rng.uniform_int(0, 2);
      c.c_gamma = log_uniform(rng, c_lo, 1.5);
      c.reward_scale = log_uniform(rng, 0.0, 2.0);
      break;
    case rl::Algo::Ddpg:
      c.step_size = log_uniform(rng, -5.0, -2.0);
      c.sigma = log_uniform(rng, -2.0, std::log10(5.0));
      c.c_gamma = log_uniform(rng, c_lo, 1.5);
      c.reward_scale = log_uniform(rng, 0.0, 2.0);
      break;
  }
  c.layers = rng.uniform_int(1, 4);
  c.hidden = 1 << rng.uniform_int(3, hidden_cap_exponent(algo, spec, c.layers));
  c.seed_net = rng.raw();
  // gamma/lambda stay unresolved: gamma_for() derives them from the factors
  // against whichever task the configuration is eventually run on.
  return c;
}

}  // namespace loopbench::search
