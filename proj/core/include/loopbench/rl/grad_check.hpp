#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace loopbench::rl {

// Central-difference gradient of f at params. Perturbs params in place and
// restores them; intended for tests and small parameter counts.
inline std::vector<double> numeric_gradient(
    const std::function<double(std::span<const double>)>& f, std::span<double> params,
    double eps = 1e-6) {
  std::vector<double> g(params.size(), 0.0);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double save = params[i];
    params[i] = save + eps;
    const double fp = f(params);
    params[i] = save - eps;
    const double fm = f(params);
    params[i] = save;
    g[i] = (fp - fm) / (2.0 * eps);
  }
  return g;
}

// Largest component-wise error between two gradients, relative to the larger
// of 1 and the component magnitudes.
inline double max_rel_error(std::span<const double> a, std::span<const double> b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale = std::max({1.0, std::abs(a[i]), std::abs(b[i])});
    worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace loopbench::rl
