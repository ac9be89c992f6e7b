#include "loopbench/rl/ddpg.hpp"

#include <algorithm>
#include <cmath>

namespace loopbench::rl {

DdpgLearner::DdpgLearner(int obs_dim, int act_dim, int hidden, int layers, const DdpgConfig& cfg,
                         std::uint64_t seed)
    : cfg_(cfg),
      obs_dim_(obs_dim),
      act_dim_(act_dim),
      init_rng_(mix_seed(seed, 10)),
      actor_(MlpSpec{obs_dim, act_dim, hidden, layers}, init_rng_),
      critic_(MlpSpec{obs_dim + act_dim, 1, hidden, layers}, init_rng_),
      actor_target_(MlpSpec{obs_dim, act_dim, hidden, layers}, init_rng_),
      critic_target_(MlpSpec{obs_dim + act_dim, 1, hidden, layers}, init_rng_),
      actor_opt_(actor_.n_params(), cfg.step_size),
      critic_opt_(critic_.n_params(), cfg.step_size),
      act_rng_(mix_seed(seed, 11)),
      update_rng_(mix_seed(seed, 12)),
      replay_(obs_dim, act_dim, cfg.replay_capacity) {
  std::copy(actor_.params().begin(), actor_.params().end(), actor_target_.params().begin());
  std::copy(critic_.params().begin(), critic_.params().end(), critic_target_.params().begin());
}

std::vector<double> DdpgLearner::act(const tasks::StepView& view) {
  std::vector<double> a(act_dim_);
  actor_.forward(view.obs, a);
  for (int i = 0; i < act_dim_; ++i)
    a[i] = std::clamp(std::tanh(a[i]) + cfg_.sigma * act_rng_.normal(), -1.0, 1.0);
  return a;
}

void DdpgLearner::record(const tasks::Transition& t) {
  replay_.add(t.obs, t.action, t.reward, t.next_obs, t.done);
  ++diag_.env_steps;
  update_once();
}

void DdpgLearner::update_once() {
  if (replay_.size() < static_cast<std::size_t>(cfg_.batch)) return;
  replay_.sample(update_rng_, cfg_.batch, batch_);
  const int m = batch_.n;

  std::vector<double> cgrad(critic_.n_params(), 0.0);
  std::vector<double> qin(obs_dim_ + act_dim_), a2(act_dim_), y1(1), dy(1);
  Mlp::Cache cache;
  double td_loss = 0.0;
  for (int i = 0; i < m; ++i) {
    const auto s2 = std::span<const double>(batch_.next_obs)
                        .subspan(static_cast<std::size_t>(i) * obs_dim_, obs_dim_);
    actor_target_.forward(s2, a2);
    std::copy(s2.begin(), s2.end(), qin.begin());
    for (int c = 0; c < act_dim_; ++c) qin[obs_dim_ + c] = std::tanh(a2[c]);
    critic_target_.forward(qin, y1);
    const double target =
        cfg_.reward_scale * batch_.reward[i] + cfg_.gamma * (batch_.done[i] ? 0.0 : 1.0) * y1[0];
    std::copy_n(batch_.obs.begin() + static_cast<std::size_t>(i) * obs_dim_, obs_dim_, qin.begin());
    std::copy_n(batch_.act.begin() + static_cast<std::size_t>(i) * act_dim_, act_dim_,
                qin.begin() + obs_dim_);
    critic_.forward(qin, y1, &cache);
    const double err = y1[0] - target;
    dy[0] = 2.0 * err / m;
    critic_.backward(cache, dy, cgrad);
    td_loss += err * err;
  }
  critic_opt_.step(critic_.params(), cgrad);
  diag_.last_value_loss = td_loss / m;

  std::vector<double> scratch(critic_.n_params());
  std::vector<double> qdx(obs_dim_ + act_dim_);
  double q_sum = 0.0;
  actor_step(actor_, batch_.obs, m,
             [&](int row, std::span<const double> act, std::span<double> dq_da) {
               std::copy_n(batch_.obs.begin() + static_cast<std::size_t>(row) * obs_dim_, obs_dim_,
                           qin.begin());
               std::copy(act.begin(), act.end(), qin.begin() + obs_dim_);
               critic_.forward(qin, y1, &cache);
               q_sum += y1[0];
               dy[0] = 1.0;
               std::fill(scratch.begin(), scratch.end(), 0.0);
               std::fill(qdx.begin(), qdx.end(), 0.0);
               critic_.backward(cache, dy, scratch, qdx);
               std::copy(qdx.begin() + obs_dim_, qdx.end(), dq_da.begin());
             },
             actor_opt_);
  diag_.last_policy_objective = q_sum / m;

  for (std::size_t i = 0; i < actor_.params().size(); ++i)
    actor_target_.params()[i] =
        cfg_.polyak * actor_target_.params()[i] + (1.0 - cfg_.polyak) * actor_.params()[i];
  for (std::size_t i = 0; i < critic_.params().size(); ++i)
    critic_target_.params()[i] =
        cfg_.polyak * critic_target_.params()[i] + (1.0 - cfg_.polyak) * critic_.params()[i];
  ++diag_.updates;
}

std::vector<NamedArray> DdpgLearner::snapshot() const {
  std::vector<NamedArray> out(2);
  out[0].name = "actor";
  out[0].shape = {static_cast<std::uint64_t>(actor_.n_params())};
  out[0].data.assign(actor_.params().begin(), actor_.params().end());
  out[1].name = "critic";
  out[1].shape = {static_cast<std::uint64_t>(critic_.n_params())};
  out[1].data.assign(critic_.params().begin(), critic_.params().end());
  return out;
}

void DdpgLearner::actor_step(Mlp& actor, std::span<const double> obs, int rows,
                             const std::function<void(int row, std::span<const double> act,
                                                      std::span<double> dq_da)>& grad_q,
                             Adam& opt) {
  const int d = actor.spec().in;
  const int k = actor.spec().out;
  std::vector<double> agrad(actor.n_params(), 0.0);
  std::vector<double> pre(k), a(k), dq(k), dpre(k);
  Mlp::Cache cache;
  for (int row = 0; row < rows; ++row) {
    actor.forward(obs.subspan(static_cast<std::size_t>(row) * d, d), pre, &cache);
    for (int c = 0; c < k; ++c) a[c] = std::tanh(pre[c]);
    grad_q(row, a, dq);
    for (int c = 0; c < k; ++c) dpre[c] = -dq[c] * (1.0 - a[c] * a[c]) / rows;
    actor.backward(cache, dpre, agrad);
  }
  opt.step(actor.params(), agrad);
}

}  // namespace loopbench::rl
