#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "loopbench/rng.hpp"

namespace loopbench::rl {

// Fixed-capacity FIFO of transitions with uniform minibatch sampling
// (with replacement). Rows are stored flat to keep sampling cache-friendly.
class ReplayBuffer {
 public:
  ReplayBuffer(int obs_dim, int act_dim, std::size_t capacity = 100000)
      : obs_dim_(obs_dim),
        act_dim_(act_dim),
        capacity_(capacity),
        obs_(capacity * obs_dim, 0.0),
        act_(capacity * act_dim, 0.0),
        next_obs_(capacity * obs_dim, 0.0),
        reward_(capacity, 0.0),
        done_(capacity, 0) {
    if (obs_dim <= 0 || act_dim <= 0 || capacity == 0)
      throw std::invalid_argument("replay buffer dimensions must be positive");
  }

  int obs_dim() const { return obs_dim_; }
  int act_dim() const { return act_dim_; }
  std::size_t capacity() const { return capacity_; }
  std::size_t size() const { return size_; }

  void add(std::span<const double> obs, std::span<const double> act, double reward,
           std::span<const double> next_obs, bool done) {
    std::copy(obs.begin(), obs.end(), obs_.begin() + head_ * obs_dim_);
    std::copy(act.begin(), act.end(), act_.begin() + head_ * act_dim_);
    std::copy(next_obs.begin(), next_obs.end(), next_obs_.begin() + head_ * obs_dim_);
    reward_[head_] = reward;
    done_[head_] = done ? 1 : 0;
    head_ = (head_ + 1) % capacity_;
    size_ = std::min(size_ + 1, capacity_);
  }

  struct Batch {
    std::vector<double> obs, act, next_obs;  // row-major n x dim
    std::vector<double> reward;
    std::vector<std::uint8_t> done;
    int n = 0;
  };

  void sample(Rng& rng, int n, Batch& out) const {
    if (size_ == 0) throw std::logic_error("sampling from an empty replay buffer");
    out.n = n;
    out.obs.resize(static_cast<std::size_t>(n) * obs_dim_);
    out.act.resize(static_cast<std::size_t>(n) * act_dim_);
    out.next_obs.resize(static_cast<std::size_t>(n) * obs_dim_);
    out.reward.resize(n);
    out.done.resize(n);
    for (int i = 0; i < n; ++i) {
      const std::size_t j = rng.bounded(size_);
      std::copy_n(obs_.begin() + j * obs_dim_, obs_dim_, out.obs.begin() + static_cast<std::size_t>(i) * obs_dim_);
      std::copy_n(act_.begin() + j * act_dim_, act_dim_, out.act.begin() + static_cast<std::size_t>(i) * act_dim_);
      std::copy_n(next_obs_.begin() + j * obs_dim_, obs_dim_,
                  out.next_obs.begin() + static_cast<std::size_t>(i) * obs_dim_);
      out.reward[i] = reward_[j];
      out.done[i] = done_[j];
    }
  }

 private:
  int obs_dim_, act_dim_;
  std::size_t capacity_, size_ = 0, head_ = 0;
  std::vector<double> obs_, act_, next_obs_, reward_;
  std::vector<std::uint8_t> done_;
};

}  // namespace loopbench::rl
