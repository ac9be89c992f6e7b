#pragma once

#include "loopbench/rl/hyperconfig.hpp"
#include "loopbench/rng.hpp"
#include "loopbench/tasks/task.hpp"

namespace loopbench::search {

// Largest hidden-size exponent X (hidden = 2^X, X >= 3) keeping every one of
// the algorithm's networks at or under the weight budget for the given task
// dimensions and hidden-layer count.
int hidden_cap_exponent(rl::Algo algo, const tasks::TaskSpec& spec, int layers,
                        long weight_budget = 100000);

// One random-search draw for an algorithm on a task. Parameters are sampled
// log-uniformly (powers of two via integer exponents) in their ranges; the
// optimization minibatch is capped by the batch. Discount/trace time-scale
// factors are stored unresolved so the same configuration transfers across
// tasks; gamma_for()/lambda_for() resolve them against whichever task the
// configuration runs on. The draw order is fixed, so one seeded generator
// reproduces a whole configuration set.
rl::HyperConfig sample_config(rl::Algo algo, const tasks::TaskSpec& spec, Rng& rng);

}  // namespace loopbench::search
