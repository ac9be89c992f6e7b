#include "loopbench/rl/hyperconfig.hpp"

#include <cmath>
#include <stdexcept>

namespace loopbench::rl {

Algo algo_from_string(const std::string& name) {
  if (name == "trpo") return Algo::Trpo;
  if (name == "ppo") return Algo::Ppo;
  if (name == "softq") return Algo::SoftQ;
  if (name == "ddpg") return Algo::Ddpg;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string algo_to_string(Algo algo) {
  switch (algo) {
    case Algo::Trpo: return "trpo";
    case Algo::Ppo: return "ppo";
    case Algo::SoftQ: return "softq";
    case Algo::Ddpg: return "ddpg";
  }
  throw std::invalid_argument("unknown algorithm enum value");
}

double gamma_from_c(double c, long steps) {
  if (c * static_cast<double>(steps) <= 1.0)
    throw std::invalid_argument("time-scale factor too small for the episode length");
  return 1.0 - 1.0 / (c * static_cast<double>(steps));
}

double HyperConfig::gamma_for(long steps) const {
  if (!std::isnan(gamma)) return gamma;
  if (std::isnan(c_gamma)) throw std::logic_error("config has neither gamma nor its time-scale factor");
  return gamma_from_c(c_gamma, steps);
}

double HyperConfig::lambda_for(long steps) const {
  if (!std::isnan(lambda)) return lambda;
  if (std::isnan(c_lambda)) throw std::logic_error("config has neither lambda nor its time-scale factor");
  return gamma_from_c(c_lambda, steps);
}

KvFile HyperConfig::to_kv() const {
  KvFile kv;
  kv.set_string("algo", algo_to_string(algo));
  kv.set_int("batch", batch);
  switch (algo) {
    case Algo::Trpo:
      kv.set_double("vf_step_size", vf_step_size);
      kv.set_double("kl_delta", kl_delta);
      break;
    case Algo::Ppo:
      kv.set_double("step_size", step_size);
      kv.set_int("opt_batch", opt_batch);
      break;
    case Algo::SoftQ:
      kv.set_double("step_size", step_size);
      kv.set_int("epochs", epochs);
      kv.set_double("reward_scale", reward_scale);
      break;
    case Algo::Ddpg:
      kv.set_double("step_size", step_size);
      kv.set_double("sigma", sigma);
      kv.set_double("reward_scale", reward_scale);
      break;
  }
  if (!std::isnan(c_gamma)) kv.set_double("c_gamma", c_gamma);
  if (!std::isnan(c_lambda)) kv.set_double("c_lambda", c_lambda);
  if (!std::isnan(gamma)) kv.set_double("gamma", gamma);
  if (!std::isnan(lambda)) kv.set_double("lambda", lambda);
  kv.set_int("layers", layers);
  kv.set_int("hidden", hidden);
  kv.set_int("seed_net", static_cast<long long>(seed_net));
  return kv;
}

HyperConfig HyperConfig::from_kv(const KvFile& kv) {
  HyperConfig c;
  c.algo = algo_from_string(kv.get_string("algo"));
  c.batch = static_cast<int>(kv.get_int("batch"));
  c.vf_step_size = kv.get_double("vf_step_size", c.vf_step_size);
  c.kl_delta = kv.get_double("kl_delta", c.kl_delta);
  c.step_size = kv.get_double("step_size", c.step_size);
  c.opt_batch = static_cast<int>(kv.get_int("opt_batch", c.opt_batch));
  c.epochs = static_cast<int>(kv.get_int("epochs", c.epochs));
  c.sigma = kv.get_double("sigma", c.sigma);
  c.reward_scale = kv.get_double("reward_scale", c.reward_scale);
  c.c_gamma = kv.get_double("c_gamma", c.c_gamma);
  c.c_lambda = kv.get_double("c_lambda", c.c_lambda);
  c.gamma = kv.get_double("gamma", c.gamma);
  c.lambda = kv.get_double("lambda", c.lambda);
  c.layers = static_cast<int>(kv.get_int("layers", c.layers));
  c.hidden = static_cast<int>(kv.get_int("hidden", c.hidden));
  c.seed_net = static_cast<std::uint64_t>(kv.get_int("seed_net", 0));
  return c;
}

}  // namespace loopbench::rl
