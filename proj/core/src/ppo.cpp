#include "loopbench/rl/ppo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loopbench/rl/gae.hpp"

namespace loopbench::rl {

double ppo_clip_objective(double logp, double logp_old, double adv, double clip, double* d_logp) {
  const double ratio = std::exp(logp - logp_old);
  const double unclipped = ratio * adv;
  const double clipped = std::clamp(ratio, 1.0 - clip, 1.0 + clip) * adv;
  // When the clipped branch is active the clamp is saturated, so the
  // objective is locally constant in the parameters.
  if (d_logp) *d_logp = unclipped <= clipped ? ratio * adv : 0.0;
  return std::min(unclipped, clipped);
}

PpoLearner::PpoLearner(const MlpSpec& policy_spec, const MlpSpec& value_spec, const PpoConfig& cfg,
                       std::uint64_t seed)
    : cfg_(cfg),
      init_rng_(mix_seed(seed, 10)),
      policy_(policy_spec, init_rng_),
      vf_(value_spec, init_rng_),
      pol_opt_(policy_.n_params(), cfg.step_size),
      vf_opt_(vf_.n_params(), cfg.step_size),
      act_rng_(mix_seed(seed, 11)),
      update_rng_(mix_seed(seed, 12)) {
  obs_.reserve(static_cast<std::size_t>(cfg_.batch) * policy_.obs_dim());
  acts_.reserve(static_cast<std::size_t>(cfg_.batch) * policy_.act_dim());
  rews_.reserve(cfg_.batch);
  dones_.reserve(cfg_.batch);
}

std::vector<double> PpoLearner::act(const tasks::StepView& view) {
  return policy_.sample(view.obs, act_rng_).raw;
}

void PpoLearner::record(const tasks::Transition& t) {
  obs_.insert(obs_.end(), t.obs.begin(), t.obs.end());
  acts_.insert(acts_.end(), t.action.begin(), t.action.end());
  rews_.push_back(t.reward);
  dones_.push_back(t.done ? 1 : 0);
  last_next_obs_.assign(t.next_obs.begin(), t.next_obs.end());
  ++filled_;
  ++diag_.env_steps;
  if (filled_ >= cfg_.batch) update();
}

void PpoLearner::update() {
  const int n = filled_;
  const int d = policy_.obs_dim();
  const int k = policy_.act_dim();
  const int np = policy_.n_params();

  std::vector<double> values(n + 1, 0.0);
  std::vector<double> v1(1);
  for (int i = 0; i < n; ++i) {
    vf_.forward(std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d), v1);
    values[i] = v1[0];
  }
  vf_.forward(last_next_obs_, v1);
  values[n] = v1[0];
  GaeResult gae = compute_gae(rews_, values, dones_, cfg_.gamma, cfg_.lambda);
  normalize_advantages(gae.advantages);

  std::vector<double> logp_old(n);
  std::vector<double> mu(k);
  for (int i = 0; i < n; ++i) {
    policy_.mean(std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d), mu);
    logp_old[i] =
        policy_.log_prob(mu, std::span<const double>(acts_).subspan(static_cast<std::size_t>(i) * k, k));
  }

  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> pgrad(np), vgrad(vf_.n_params());
  std::vector<double> theta(np);
  std::vector<double> dy(1);
  Mlp::Cache cache;
  double kl_sum = 0.0, obj_sum = 0.0, vloss_sum = 0.0;
  long tail_count = 0;
  for (int epoch = 0; epoch < cfg_.epochs; ++epoch) {
    for (int i = n - 1; i > 0; --i) std::swap(idx[i], idx[update_rng_.uniform_int(0, i)]);
    for (int start = 0; start < n; start += cfg_.opt_batch) {
      const int m = std::min(cfg_.opt_batch, n - start);
      std::fill(pgrad.begin(), pgrad.end(), 0.0);
      std::fill(vgrad.begin(), vgrad.end(), 0.0);
      for (int j = start; j < start + m; ++j) {
        const int i = idx[j];
        const auto o = std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d);
        const auto a = std::span<const double>(acts_).subspan(static_cast<std::size_t>(i) * k, k);
        policy_.mean(o, mu);
        const double logp = policy_.log_prob(mu, a);
        double dobj;
        const double obj = ppo_clip_objective(logp, logp_old[i], gae.advantages[i], cfg_.clip, &dobj);
        // Minimized loss is -objective; mean over the minibatch.
        if (dobj != 0.0) policy_.logp_grad_accum(o, a, -dobj / m, pgrad);
        vf_.forward(o, v1, &cache);
        const double err = v1[0] - gae.returns[i];
        dy[0] = 2.0 * err / m;
        vf_.backward(cache, dy, vgrad);
        if (epoch == cfg_.epochs - 1) {
          kl_sum += logp_old[i] - logp;
          obj_sum += obj;
          vloss_sum += err * err;
          ++tail_count;
        }
      }
      policy_.get_params(theta);
      pol_opt_.step(theta, pgrad);
      policy_.set_params(theta);
      vf_opt_.step(vf_.params(), vgrad);
    }
  }
  diag_.last_kl = tail_count > 0 ? kl_sum / tail_count : 0.0;
  diag_.last_policy_objective = tail_count > 0 ? obj_sum / tail_count : 0.0;
  diag_.last_value_loss = tail_count > 0 ? vloss_sum / tail_count : 0.0;
  ++diag_.updates;

  obs_.clear();
  acts_.clear();
  rews_.clear();
  dones_.clear();
  filled_ = 0;
}

std::vector<NamedArray> PpoLearner::snapshot() const {
  std::vector<NamedArray> out(3);
  out[0].name = "policy.mean";
  out[0].shape = {static_cast<std::uint64_t>(policy_.mean_net().n_params())};
  out[0].data.assign(policy_.mean_net().params().begin(), policy_.mean_net().params().end());
  out[1].name = "policy.logstd";
  out[1].shape = {static_cast<std::uint64_t>(policy_.act_dim())};
  out[1].data.assign(policy_.logstd().begin(), policy_.logstd().end());
  out[2].name = "value";
  out[2].shape = {static_cast<std::uint64_t>(vf_.n_params())};
  out[2].data.assign(vf_.params().begin(), vf_.params().end());
  return out;
}

}  // namespace loopbench::rl
