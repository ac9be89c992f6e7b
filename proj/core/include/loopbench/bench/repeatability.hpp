#pragma once

#include <string>
#include <vector>

#include "loopbench/bench/runner.hpp"

namespace loopbench::bench {

// Result of running the same plan several times with the same seed under the
// virtual clock. Runs are compared by their serialized records: with a
// deterministic clock every copy must be byte-identical.
struct RepeatReport {
  int copies = 0;
  bool identical = false;
  int divergent_run = -1;       // first copy differing from copy 0
  int divergent_episode = -1;   // first episode index that differs
  long divergent_step = -1;     // end step of that episode in copy 0 (or -1)
  std::string detail;           // human-readable outcome
  std::vector<std::vector<double>> returns;  // per copy, per episode
};

// Compares already-executed copies against copy 0 by serialized bytes and
// localizes the first divergence (first bitwise-differing episode return, or
// the first episode where only lengths/metadata differ). Requires >= 2
// records; throws std::invalid_argument otherwise.
RepeatReport compare_records(const std::vector<RunRecord>& records);

// Requires a virtual-clock plan and copies >= 2; throws
// std::invalid_argument otherwise.
RepeatReport repeatability_experiment(const RunPlan& plan, int copies);

}  // namespace loopbench::bench
