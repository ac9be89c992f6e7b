#pragma once

#include <memory>
#include <vector>

#include "loopbench/rl/checkpoint.hpp"
#include "loopbench/rl/hyperconfig.hpp"
#include "loopbench/tasks/env.hpp"

namespace loopbench::rl {

struct LearnerDiag {
  long env_steps = 0;
  long updates = 0;
  long fallbacks = 0;  // trust-region updates rejected by the line search
  double last_kl = 0.0;
  double last_policy_objective = 0.0;
  double last_value_loss = 0.0;
};

// An agent that also consumes its own transition stream. record() is fed
// after every environment step and triggers updates on the algorithm's own
// schedule (full rollout batch for on-policy, every step for off-policy).
class Learner : public tasks::Agent {
 public:
  virtual void record(const tasks::Transition& t) = 0;
  virtual std::vector<NamedArray> snapshot() const = 0;
  const LearnerDiag& diag() const { return diag_; }

 protected:
  LearnerDiag diag_;
};

// Builds the learner for a task from a configuration whose gamma/lambda are
// resolved against the task's episode length. seed drives network init and
// all of the learner's private randomness.
std::unique_ptr<Learner> make_learner(const tasks::TaskSpec& spec, const HyperConfig& cfg,
                                      std::uint64_t seed);

}  // namespace loopbench::rl
