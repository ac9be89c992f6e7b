#pragma once

#include <span>
#include <vector>

#include "loopbench/rl/mlp.hpp"
#include "loopbench/rng.hpp"

namespace loopbench::rl {

// Diagonal Gaussian policy: an MLP mean plus state-independent log standard
// deviations. Samples are taken from the unclamped Gaussian (and stored as
// such for likelihood ratios); executed actions are clamped to [-1, 1].
class GaussianPolicy {
 public:
  GaussianPolicy(const MlpSpec& mean_spec, Rng& rng, double logstd_init = -0.5);

  int obs_dim() const { return mean_.spec().in; }
  int act_dim() const { return mean_.spec().out; }
  const Mlp& mean_net() const { return mean_; }
  Mlp& mean_net() { return mean_; }
  std::span<const double> logstd() const { return logstd_; }
  std::span<double> logstd() { return logstd_; }

  // Packed parameter vector: [mean-net params..., logstd...].
  int n_params() const { return mean_.n_params() + act_dim(); }
  void get_params(std::span<double> out) const;
  void set_params(std::span<const double> in);

  void mean(std::span<const double> obs, std::span<double> mu) const { mean_.forward(obs, mu); }

  struct Sample {
    std::vector<double> raw;       // Gaussian sample (stored for learning)
    std::vector<double> executed;  // clamped to the action box
    double log_prob = 0.0;
  };
  Sample sample(std::span<const double> obs, Rng& rng) const;

  double log_prob(std::span<const double> mu, std::span<const double> action) const;

  // Accumulates w * d(log pi(a|s))/d(params) into the packed gradient.
  void logp_grad_accum(std::span<const double> obs, std::span<const double> action, double w,
                       std::span<double> grad) const;

  // KL(old || current) for one state given the old policy's mean/logstd.
  double kl_from(std::span<const double> mu_old, std::span<const double> logstd_old,
                 std::span<const double> mu_new) const;

  double entropy() const;

  // Gauss-Newton Fisher-vector product for the diagonal Gaussian, averaged
  // over the batch: mean block J^T diag(exp(-2*logstd)) J v, logstd block 2v.
  // Evaluated at the current parameters; obs is row-major batch x obs_dim.
  void fisher_vector_product(std::span<const double> obs, int batch, std::span<const double> v,
                             std::span<double> out, int subsample_stride = 1) const;

 private:
  Mlp mean_;
  std::vector<double> logstd_;
};

}  // namespace loopbench::rl
