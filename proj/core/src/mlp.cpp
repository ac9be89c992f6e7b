#include "loopbench/rl/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace loopbench::rl {

long mlp_weight_count(const MlpSpec& s) {
  long n = static_cast<long>(s.in + 1) * s.hidden;
  n += static_cast<long>(s.layers - 1) * (s.hidden + 1) * s.hidden;
  n += static_cast<long>(s.hidden + 1) * s.out;
  return n;
}

namespace {

// Orthonormalizes the rows (out <= in) or columns (out > in) of a Gaussian
// draw via modified Gram-Schmidt.
void orthogonal_fill(double* w, int out, int in, double gain, loopbench::Rng& rng) {
  const int rows = out, cols = in;
  std::vector<double> g(static_cast<std::size_t>(rows) * cols);
  for (auto& v : g) v = rng.normal();
  const bool by_rows = rows <= cols;
  const int nvec = by_rows ? rows : cols;
  const int dim = by_rows ? cols : rows;
  auto at = [&](int v, int d) -> double& { return by_rows ? g[v * cols + d] : g[d * cols + v]; };
  for (int v = 0; v < nvec; ++v) {
    for (int u = 0; u < v; ++u) {
      double dot = 0.0;
      for (int d = 0; d < dim; ++d) dot += at(v, d) * at(u, d);
      for (int d = 0; d < dim; ++d) at(v, d) -= dot * at(u, d);
    }
    double norm = 0.0;
    for (int d = 0; d < dim; ++d) norm += at(v, d) * at(v, d);
    norm = std::sqrt(norm);
    if (norm < 1e-12) norm = 1.0;
    for (int d = 0; d < dim; ++d) at(v, d) /= norm;
  }
  for (int i = 0; i < rows * cols; ++i) w[i] = gain * g[i];
}

}  // namespace

Mlp::Mlp(const MlpSpec& spec, Rng& rng, double final_gain) : spec_(spec) {
  if (spec.layers < 1 || spec.hidden < 1 || spec.in < 1 || spec.out < 1)
    throw std::invalid_argument("invalid MLP spec");
  params_.assign(mlp_weight_count(spec), 0.0);
  int off = 0;
  auto add_layer = [&](int in, int out) {
    layers_.push_back({off, off + in * out, in, out});
    off += in * out + out;
  };
  add_layer(spec.in, spec.hidden);
  for (int l = 1; l < spec.layers; ++l) add_layer(spec.hidden, spec.hidden);
  add_layer(spec.hidden, spec.out);
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& L = layers_[l];
    const double gain = l + 1 == layers_.size() ? final_gain : std::sqrt(2.0);
    orthogonal_fill(&params_[L.w_off], L.out, L.in, gain, rng);
    // biases start at zero
  }
}

void Mlp::forward(std::span<const double> x, std::span<double> y, Cache* cache) const {
  if (cache) {
    cache->input.assign(x.begin(), x.end());
    cache->act.assign(layers_.size() - 1, {});
  }
  static thread_local std::vector<double> cur, next;  // scratch; no nested calls
  cur.assign(x.begin(), x.end());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& L = layers_[l];
    next.assign(L.out, 0.0);
    const double* w = &params_[L.w_off];
    const double* b = &params_[L.b_off];
    for (int o = 0; o < L.out; ++o) {
      double s = b[o];
      const double* wr = w + static_cast<std::size_t>(o) * L.in;
      for (int i = 0; i < L.in; ++i) s += wr[i] * cur[i];
      next[o] = s;
    }
    if (l + 1 < layers_.size()) {
      for (auto& v : next) v = std::tanh(v);
      if (cache) cache->act[l] = next;
    }
    cur.swap(next);
  }
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = cur[i];
}

void Mlp::backward(const Cache& cache, std::span<const double> dy, std::span<double> dparams,
                   std::span<double> dx) const {
  static thread_local std::vector<double> delta, prev;  // scratch; no nested calls
  delta.assign(dy.begin(), dy.end());
  for (int l = static_cast<int>(layers_.size()) - 1; l >= 0; --l) {
    const Layer& L = layers_[l];
    const std::vector<double>& in_act = l == 0 ? cache.input : cache.act[l - 1];
    double* dw = &dparams[L.w_off];
    double* db = &dparams[L.b_off];
    const double* w = &params_[L.w_off];
    for (int o = 0; o < L.out; ++o) {
      const double d = delta[o];
      db[o] += d;
      double* dwr = dw + static_cast<std::size_t>(o) * L.in;
      for (int i = 0; i < L.in; ++i) dwr[i] += d * in_act[i];
    }
    if (l == 0 && dx.empty()) break;
    prev.assign(L.in, 0.0);
    for (int o = 0; o < L.out; ++o) {
      const double d = delta[o];
      const double* wr = w + static_cast<std::size_t>(o) * L.in;
      for (int i = 0; i < L.in; ++i) prev[i] += d * wr[i];
    }
    if (l > 0) {
      const std::vector<double>& a = cache.act[l - 1];
      for (int i = 0; i < L.in; ++i) prev[i] *= 1.0 - a[i] * a[i];
    }
    delta.swap(prev);
  }
  if (!dx.empty())
    for (std::size_t i = 0; i < dx.size(); ++i) dx[i] = delta[i];
}

void Mlp::jvp(std::span<const double> x, std::span<const double> dparams, std::span<double> dy) const {
  static thread_local std::vector<double> cur, dcur, next, dnext;  // scratch
  cur.assign(x.begin(), x.end());
  dcur.assign(x.size(), 0.0);  // derivative w.r.t. params only
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& L = layers_[l];
    next.assign(L.out, 0.0);
    dnext.assign(L.out, 0.0);
    const double* w = &params_[L.w_off];
    const double* b = &params_[L.b_off];
    const double* vw = &dparams[L.w_off];
    const double* vb = &dparams[L.b_off];
    for (int o = 0; o < L.out; ++o) {
      double s = b[o], ds = vb[o];
      const double* wr = w + static_cast<std::size_t>(o) * L.in;
      const double* vr = vw + static_cast<std::size_t>(o) * L.in;
      for (int i = 0; i < L.in; ++i) {
        s += wr[i] * cur[i];
        ds += vr[i] * cur[i] + wr[i] * dcur[i];
      }
      next[o] = s;
      dnext[o] = ds;
    }
    if (l + 1 < layers_.size()) {
      for (int o = 0; o < L.out; ++o) {
        const double t = std::tanh(next[o]);
        dnext[o] *= 1.0 - t * t;
        next[o] = t;
      }
    }
    cur.swap(next);
    dcur.swap(dnext);
  }
  for (std::size_t i = 0; i < dy.size(); ++i) dy[i] = dcur[i];
}

}  // namespace loopbench::rl
