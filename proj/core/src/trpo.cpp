#include "loopbench/rl/trpo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "loopbench/rl/gae.hpp"

namespace loopbench::rl {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

TrpoLearner::TrpoLearner(const MlpSpec& policy_spec, const MlpSpec& value_spec,
                         const TrpoConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      init_rng_(mix_seed(seed, 10)),
      policy_(policy_spec, init_rng_),
      vf_(value_spec, init_rng_),
      vf_opt_(vf_.n_params(), cfg.vf_step_size),
      act_rng_(mix_seed(seed, 11)),
      update_rng_(mix_seed(seed, 12)) {
  obs_.reserve(static_cast<std::size_t>(cfg_.batch) * policy_.obs_dim());
  acts_.reserve(static_cast<std::size_t>(cfg_.batch) * policy_.act_dim());
  rews_.reserve(cfg_.batch);
  dones_.reserve(cfg_.batch);
}

std::vector<double> TrpoLearner::act(const tasks::StepView& view) {
  return policy_.sample(view.obs, act_rng_).raw;
}

void TrpoLearner::record(const tasks::Transition& t) {
  obs_.insert(obs_.end(), t.obs.begin(), t.obs.end());
  acts_.insert(acts_.end(), t.action.begin(), t.action.end());
  rews_.push_back(t.reward);
  dones_.push_back(t.done ? 1 : 0);
  last_next_obs_.assign(t.next_obs.begin(), t.next_obs.end());
  ++filled_;
  ++diag_.env_steps;
  if (filled_ >= cfg_.batch) update();
}

void TrpoLearner::update() {
  const int n = filled_;
  const int d = policy_.obs_dim();
  const int k = policy_.act_dim();
  const int np = policy_.n_params();

  std::vector<double> values(n + 1, 0.0);
  {
    std::vector<double> v1(1);
    for (int i = 0; i < n; ++i) {
      vf_.forward(std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d), v1);
      values[i] = v1[0];
    }
    vf_.forward(last_next_obs_, v1);
    values[n] = v1[0];
  }
  GaeResult gae = compute_gae(rews_, values, dones_, cfg_.gamma, cfg_.lambda);
  normalize_advantages(gae.advantages);

  // Snapshot of the sampling policy (unchanged since collection).
  std::vector<double> mu_old(static_cast<std::size_t>(n) * k);
  std::vector<double> logp_old(n);
  std::vector<double> logstd_old(policy_.logstd().begin(), policy_.logstd().end());
  for (int i = 0; i < n; ++i) {
    const auto o = std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d);
    const auto mu = std::span<double>(mu_old).subspan(static_cast<std::size_t>(i) * k, k);
    policy_.mean(o, mu);
    logp_old[i] = policy_.log_prob(mu, std::span<const double>(acts_).subspan(static_cast<std::size_t>(i) * k, k));
  }

  std::vector<double> g(np, 0.0);
  for (int i = 0; i < n; ++i) {
    policy_.logp_grad_accum(std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d),
                            std::span<const double>(acts_).subspan(static_cast<std::size_t>(i) * k, k),
                            gae.advantages[i] / n, g);
  }

  const auto avp = [&](std::span<const double> v, std::span<double> out) {
    policy_.fisher_vector_product(obs_, n, v, out, cfg_.fvp_subsample_stride);
    for (int i = 0; i < np; ++i) out[i] += cfg_.cg_damping * v[i];
  };

  // Conjugate gradient on (F + damping I) x = g from x = 0.
  std::vector<double> x(np, 0.0), r(g), p(g), ap(np);
  double rs = dot(r, r);
  bool usable = rs > 1e-20 && std::isfinite(rs);
  if (usable) {
    for (int it = 0; it < cfg_.cg_iters; ++it) {
      avp(p, ap);
      const double pap = dot(p, ap);
      if (!(pap > 0.0) || !std::isfinite(pap)) break;
      const double alpha = rs / pap;
      for (int i = 0; i < np; ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * ap[i];
      }
      const double rs_new = dot(r, r);
      if (rs_new < 1e-12) break;
      for (int i = 0; i < np; ++i) p[i] = r[i] + (rs_new / rs) * p[i];
      rs = rs_new;
    }
    avp(x, ap);
    const double shs = dot(x, ap);
    usable = shs > 1e-20 && std::isfinite(shs);
    if (usable) {
      const double full = std::sqrt(2.0 * cfg_.kl_delta / shs);
      for (int i = 0; i < np; ++i) x[i] *= full;
    }
  }

  std::vector<double> theta_old(np);
  policy_.get_params(theta_old);

  bool accepted = false;
  if (usable) {
    std::vector<double> theta(np), mu_new(k);
    double scale = 1.0;
    for (int step = 0; step < cfg_.line_search_steps; ++step, scale *= 0.5) {
      for (int i = 0; i < np; ++i) theta[i] = theta_old[i] + scale * x[i];
      policy_.set_params(theta);
      double kl = 0.0, surrogate = 0.0, surrogate_old = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto o = std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d);
        const auto a = std::span<const double>(acts_).subspan(static_cast<std::size_t>(i) * k, k);
        const auto mo = std::span<const double>(mu_old).subspan(static_cast<std::size_t>(i) * k, k);
        policy_.mean(o, mu_new);
        kl += policy_.kl_from(mo, logstd_old, mu_new);
        surrogate += std::exp(policy_.log_prob(mu_new, a) - logp_old[i]) * gae.advantages[i];
        surrogate_old += gae.advantages[i];
      }
      kl /= n;
      surrogate /= n;
      surrogate_old /= n;
      if (std::isfinite(kl) && std::isfinite(surrogate) && kl <= 1.5 * cfg_.kl_delta &&
          surrogate > surrogate_old) {
        accepted = true;
        diag_.last_kl = kl;
        diag_.last_policy_objective = surrogate - surrogate_old;
        break;
      }
    }
  }
  if (!accepted) {
    policy_.set_params(theta_old);
    ++diag_.fallbacks;
    diag_.last_kl = 0.0;
    diag_.last_policy_objective = 0.0;
  }

  // Value-net regression toward the advantage-corrected returns.
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<double> vgrad(vf_.n_params());
  std::vector<double> v1(1), dy(1);
  Mlp::Cache cache;
  double value_loss = 0.0;
  for (int epoch = 0; epoch < cfg_.vf_epochs; ++epoch) {
    for (int i = n - 1; i > 0; --i) std::swap(idx[i], idx[update_rng_.uniform_int(0, i)]);
    for (int start = 0; start < n; start += cfg_.vf_minibatch) {
      const int m = std::min(cfg_.vf_minibatch, n - start);
      std::fill(vgrad.begin(), vgrad.end(), 0.0);
      for (int j = start; j < start + m; ++j) {
        const int i = idx[j];
        vf_.forward(std::span<const double>(obs_).subspan(static_cast<std::size_t>(i) * d, d), v1, &cache);
        const double err = v1[0] - gae.returns[i];
        dy[0] = 2.0 * err / m;
        vf_.backward(cache, dy, vgrad);
        if (epoch == cfg_.vf_epochs - 1) value_loss += err * err;
      }
      vf_opt_.step(vf_.params(), vgrad);
    }
  }
  diag_.last_value_loss = value_loss / n;
  ++diag_.updates;

  obs_.clear();
  acts_.clear();
  rews_.clear();
  dones_.clear();
  filled_ = 0;
}

std::vector<NamedArray> TrpoLearner::snapshot() const {
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
