#pragma once

#include <cstdint>
#include <vector>

#include "loopbench/bench/run_record.hpp"

namespace loopbench::bench {

// Mean learning curve across runs: episode returns are bucketed by the step
// at which each episode ended, every run contributes one value per bucket,
// and the curve reports the across-run mean with its standard error.
struct LearningCurve {
  long bin_steps = 0;
  std::vector<long> bin_end;      // right edge of each bin, in steps
  std::vector<double> mean;       // across-run mean of per-run bin values
  std::vector<double> stderr_;    // sample standard deviation / sqrt(runs)
  std::vector<std::uint8_t> carried;  // some run had no episode in this bin
};

// Requires >= 2 runs of the same task and a positive bin width; throws
// std::invalid_argument otherwise. A run's bins with no finished episode
// carry the previous bin's value (leading gaps borrow the first available
// value) and mark the bin as carried.
LearningCurve learning_curve(const std::vector<RunRecord>& runs, long bin_steps);

}  // namespace loopbench::bench
