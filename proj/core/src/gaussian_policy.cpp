#include "loopbench/rl/gaussian_policy.hpp"

#include <algorithm>
#include <cmath>

namespace loopbench::rl {

namespace {
constexpr double kLog2Pi = 1.8378770664093453;
}

GaussianPolicy::GaussianPolicy(const MlpSpec& mean_spec, Rng& rng, double logstd_init)
    : mean_(mean_spec, rng, 0.01), logstd_(mean_spec.out, logstd_init) {}

void GaussianPolicy::get_params(std::span<double> out) const {
  const auto mp = mean_.params();
  std::copy(mp.begin(), mp.end(), out.begin());
  std::copy(logstd_.begin(), logstd_.end(), out.begin() + mp.size());
}

void GaussianPolicy::set_params(std::span<const double> in) {
  auto mp = mean_.params();
  std::copy(in.begin(), in.begin() + mp.size(), mp.begin());
  std::copy(in.begin() + mp.size(), in.end(), logstd_.begin());
}

GaussianPolicy::Sample GaussianPolicy::sample(std::span<const double> obs, Rng& rng) const {
  Sample s;
  const int k = act_dim();
  std::vector<double> mu(k);
  mean_.forward(obs, mu);
  s.raw.resize(k);
  s.executed.resize(k);
  for (int i = 0; i < k; ++i) {
    s.raw[i] = mu[i] + std::exp(logstd_[i]) * rng.normal();
    s.executed[i] = std::clamp(s.raw[i], -1.0, 1.0);
  }
  s.log_prob = log_prob(mu, s.raw);
  return s;
}

double GaussianPolicy::log_prob(std::span<const double> mu, std::span<const double> action) const {
  double lp = 0.0;
  for (int i = 0; i < act_dim(); ++i) {
    const double z = (action[i] - mu[i]) * std::exp(-logstd_[i]);
    lp += -0.5 * z * z - logstd_[i] - 0.5 * kLog2Pi;
  }
  return lp;
}

void GaussianPolicy::logp_grad_accum(std::span<const double> obs, std::span<const double> action,
                                     double w, std::span<double> grad) const {
  const int k = act_dim();
  Mlp::Cache cache;
  std::vector<double> mu(k);
  mean_.forward(obs, mu, &cache);
  std::vector<double> dmu(k);
  for (int i = 0; i < k; ++i) {
    const double inv_var = std::exp(-2.0 * logstd_[i]);
    const double diff = action[i] - mu[i];
    dmu[i] = w * diff * inv_var;  // d logp / d mu
    grad[mean_.n_params() + i] += w * (diff * diff * inv_var - 1.0);
  }
  mean_.backward(cache, dmu, grad.subspan(0, mean_.n_params()));
}

double GaussianPolicy::kl_from(std::span<const double> mu_old, std::span<const double> logstd_old,
                               std::span<const double> mu_new) const {
  double kl = 0.0;
  for (int i = 0; i < act_dim(); ++i) {
    const double dl = logstd_[i] - logstd_old[i];
    const double var_old = std::exp(2.0 * logstd_old[i]);
    const double dm = mu_old[i] - mu_new[i];
    kl += dl + (var_old + dm * dm) * std::exp(-2.0 * logstd_[i]) * 0.5 - 0.5;
  }
  return kl;
}

double GaussianPolicy::entropy() const {
  double h = 0.0;
  for (double l : logstd_) h += l + 0.5 * (kLog2Pi + 1.0);
  return h;
}

void GaussianPolicy::fisher_vector_product(std::span<const double> obs, int batch,
                                           std::span<const double> v, std::span<double> out,
                                           int subsample_stride) const {
  const int k = act_dim();
  const int d = obs_dim();
  const int np = mean_.n_params();
  std::fill(out.begin(), out.end(), 0.0);
  std::vector<double> jv(k), dy(k);
  Mlp::Cache cache;
  std::vector<double> mu(k);
  int used = 0;
  for (int b = 0; b < batch; b += subsample_stride) {
    const auto x = obs.subspan(static_cast<std::size_t>(b) * d, d);
    mean_.jvp(x, v.subspan(0, np), jv);
    for (int i = 0; i < k; ++i) dy[i] = jv[i] * std::exp(-2.0 * logstd_[i]);
    mean_.forward(x, mu, &cache);
    mean_.backward(cache, dy, out.subspan(0, np));
    ++used;
  }
  const double inv = used > 0 ? 1.0 / used : 0.0;
  for (int i = 0; i < np; ++i) out[i] *= inv;
  for (int i = 0; i < k; ++i) out[np + i] = 2.0 * v[np + i];
}

}  // namespace loopbench::rl
