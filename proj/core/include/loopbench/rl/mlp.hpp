#pragma once

#include <span>
#include <vector>

#include "loopbench/rng.hpp"

namespace loopbench::rl {

struct MlpSpec {
  int in = 1;
  int out = 1;
  int hidden = 64;
  int layers = 2;  // hidden layer count, >= 1
};

// (in+1)h + (L-1)(h+1)h + (h+1)out
long mlp_weight_count(const MlpSpec& s);

// Fully connected tanh network with a linear output layer. Parameters live in
// one flat row-major vector so optimizers, checkpoints, and curvature products
// can treat the network as a single coordinate vector.
class Mlp {
 public:
  // Orthogonal-style init: per-layer orthonormalized Gaussian draws, hidden
  // layers scaled by sqrt(2), the output layer by final_gain.
  Mlp(const MlpSpec& spec, Rng& rng, double final_gain = 1.0);

  const MlpSpec& spec() const { return spec_; }
  int n_params() const { return static_cast<int>(params_.size()); }
  std::span<double> params() { return params_; }
  std::span<const double> params() const { return params_; }

  struct Cache {
    std::vector<double> input;
    std::vector<std::vector<double>> act;  // post-tanh per hidden layer
  };

  void forward(std::span<const double> x, std::span<double> y, Cache* cache = nullptr) const;

  // Accumulates dL/dparams into dparams given dL/dy; optionally writes dL/dx.
  void backward(const Cache& cache, std::span<const double> dy, std::span<double> dparams,
                std::span<double> dx = {}) const;

  // Forward-mode directional derivative: dy = J_params(x) . dparams.
  void jvp(std::span<const double> x, std::span<const double> dparams, std::span<double> dy) const;

 private:
  struct Layer {
    int w_off, b_off, in, out;
  };

  MlpSpec spec_;
  std::vector<double> params_;
  std::vector<Layer> layers_;
};

}  // namespace loopbench::rl
