#include "loopbench/rl/softq.hpp"

#include <algorithm>
#include <cmath>

namespace loopbench::rl {

double soft_value(const Mlp& q, std::span<const double> obs, int samples, Rng& rng) {
  const int d = q.spec().in - static_cast<int>(obs.size());
  std::vector<double> in(q.spec().in);
  std::copy(obs.begin(), obs.end(), in.begin());
  std::vector<double> qs(samples), y(1);
  for (int j = 0; j < samples; ++j) {
    for (int i = 0; i < d; ++i) in[obs.size() + i] = rng.uniform(-1.0, 1.0);
    q.forward(in, y);
    qs[j] = y[0];
  }
  const double peak = *std::max_element(qs.begin(), qs.end());
  double acc = 0.0;
  for (double v : qs) acc += std::exp(v - peak);
  return peak + std::log(acc / samples);
}

SoftQLearner::SoftQLearner(int obs_dim, int act_dim, int hidden, int layers,
                           const SoftQConfig& cfg, std::uint64_t seed)
    : cfg_(cfg),
      obs_dim_(obs_dim),
      act_dim_(act_dim),
      init_rng_(mix_seed(seed, 10)),
      q_(MlpSpec{obs_dim + act_dim, 1, hidden, layers}, init_rng_),
      // A wide output head makes the fresh sampler spread tanh actions over
      // the whole box, approximating the uniform energy policy of a zero
      // critic instead of collapsing onto the box centre.
      sampler_(MlpSpec{obs_dim + act_dim, act_dim, hidden, layers}, init_rng_, 2.0),
      q_target_(MlpSpec{obs_dim + act_dim, 1, hidden, layers}, init_rng_),
      q_opt_(q_.n_params(), cfg.step_size),
      sampler_opt_(sampler_.n_params(), cfg.step_size),
      act_rng_(mix_seed(seed, 11)),
      update_rng_(mix_seed(seed, 12)),
      replay_(obs_dim, act_dim, cfg.replay_capacity) {
  auto src = q_.params();
  std::copy(src.begin(), src.end(), q_target_.params().begin());
}

std::vector<double> SoftQLearner::sample_action(std::span<const double> obs, Rng& rng,
                                                Mlp::Cache* cache, std::vector<double>* pre_out) {
  std::vector<double> in(obs_dim_ + act_dim_);
  std::copy(obs.begin(), obs.end(), in.begin());
  for (int i = 0; i < act_dim_; ++i) in[obs_dim_ + i] = rng.normal();
  std::vector<double> pre(act_dim_);
  sampler_.forward(in, pre, cache);
  std::vector<double> a(act_dim_);
  for (int i = 0; i < act_dim_; ++i) a[i] = std::tanh(pre[i]);
  if (pre_out) *pre_out = std::move(pre);
  return a;
}

std::vector<double> SoftQLearner::act(const tasks::StepView& view) {
  return sample_action(view.obs, act_rng_);
}

void SoftQLearner::record(const tasks::Transition& t) {
  replay_.add(t.obs, t.action, t.reward, t.next_obs, t.done);
  ++diag_.env_steps;
  for (int e = 0; e < cfg_.epochs; ++e) update_once();
}

void SoftQLearner::update_once() {
  if (replay_.size() < static_cast<std::size_t>(cfg_.batch)) return;
  replay_.sample(update_rng_, cfg_.batch, batch_);
  const int m = batch_.n;
  const int K = cfg_.particles;

  // Critic: squared TD error against the target net's soft value.
  std::vector<double> qgrad(q_.n_params(), 0.0);
  std::vector<double> qin(obs_dim_ + act_dim_), y1(1), dy(1);
  Mlp::Cache cache;
  double td_loss = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto s2 = std::span<const double>(batch_.next_obs)
                        .subspan(static_cast<std::size_t>(i) * obs_dim_, obs_dim_);
    const double v2 = soft_value(q_target_, s2, cfg_.value_samples, update_rng_);
    const double target =
        cfg_.reward_scale * batch_.reward[i] + cfg_.gamma * (batch_.done[i] ? 0.0 : 1.0) * v2;
    std::copy_n(batch_.obs.begin() + static_cast<std::size_t>(i) * obs_dim_, obs_dim_, qin.begin());
    std::copy_n(batch_.act.begin() + static_cast<std::size_t>(i) * act_dim_, act_dim_,
                qin.begin() + obs_dim_);
    q_.forward(qin, y1, &cache);
    const double err = y1[0] - target;
    dy[0] = 2.0 * err / m;
    q_.backward(cache, dy, qgrad);
    td_loss += err * err;
  }
  q_opt_.step(q_.params(), qgrad);
  diag_.last_value_loss = td_loss / m;
  ++grad_steps_;
  if (grad_steps_ % cfg_.target_sync == 0) {
    auto src = q_.params();
    std::copy(src.begin(), src.end(), q_target_.params().begin());
  }

  // Sampler: Stein variational direction on tanh-squashed particles,
  // backpropagated through the sampler network.
  std::vector<double> sgrad(sampler_.n_params(), 0.0);
  std::vector<Mlp::Cache> caches(K);
  std::vector<std::vector<double>> parts(K), grads_q(K);
  std::vector<double> qdx(obs_dim_ + act_dim_), scratch(q_.n_params());
  std::vector<double> d2(static_cast<std::size_t>(K) * K);
  std::vector<double> phi(act_dim_), dpre(act_dim_);
  double q_mean = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto s = std::span<const double>(batch_.obs)
                       .subspan(static_cast<std::size_t>(i) * obs_dim_, obs_dim_);
    for (int k = 0; k < K; ++k) {
      parts[k] = sample_action(s, update_rng_, &caches[k]);
      std::copy(s.begin(), s.end(), qin.begin());
      std::copy(parts[k].begin(), parts[k].end(), qin.begin() + obs_dim_);
      q_.forward(qin, y1, &cache);
      q_mean += y1[0];
      dy[0] = 1.0;
      std::fill(scratch.begin(), scratch.end(), 0.0);
      std::fill(qdx.begin(), qdx.end(), 0.0);
      q_.backward(cache, dy, scratch, qdx);
      grads_q[k].assign(qdx.begin() + obs_dim_, qdx.end());
    }
    for (int a = 0; a < K; ++a)
      for (int b = 0; b < K; ++b) {
        double s2 = 0.0;
        for (int c = 0; c < act_dim_; ++c) {
          const double diff = parts[a][c] - parts[b][c];
          s2 += diff * diff;
        }
        d2[static_cast<std::size_t>(a) * K + b] = s2;
      }
    std::vector<double> med(d2);
    std::nth_element(med.begin(), med.begin() + med.size() / 2, med.end());
    const double h = std::max(med[med.size() / 2] / (2.0 * std::log(K + 1.0)), 1e-6);
    for (int p = 0; p < K; ++p) {
      std::fill(phi.begin(), phi.end(), 0.0);
      for (int j = 0; j < K; ++j) {
        const double kern = std::exp(-d2[static_cast<std::size_t>(j) * K + p] / h);
        for (int c = 0; c < act_dim_; ++c)
          phi[c] += kern * (grads_q[j][c] - 2.0 / h * (parts[j][c] - parts[p][c]));
      }
      for (int c = 0; c < act_dim_; ++c) {
        const double through_tanh = (1.0 - parts[p][c] * parts[p][c]);
        dpre[c] = -phi[c] / K * through_tanh / m / K;
      }
      sampler_.backward(caches[p], dpre, sgrad);
    }
  }
  sampler_opt_.step(sampler_.params(), sgrad);
  diag_.last_policy_objective = q_mean / (static_cast<double>(m) * K);
  ++diag_.updates;
}

std::vector<NamedArray> SoftQLearner::snapshot() const {
  std::vector<NamedArray> out(2);
  out[0].name = "q";
  out[0].shape = {static_cast<std::uint64_t>(q_.n_params())};
  out[0].data.assign(q_.params().begin(), q_.params().end());
  out[1].name = "sampler";
  out[1].shape = {static_cast<std::uint64_t>(sampler_.n_params())};
  out[1].data.assign(sampler_.params().begin(), sampler_.params().end());
  return out;
}

}  // namespace loopbench::rl
