#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "loopbench/bench/run_record.hpp"
#include "loopbench/rl/checkpoint.hpp"
#include "loopbench/rl/hyperconfig.hpp"
#include "loopbench/rl/learner.hpp"
#include "loopbench/runtime/clock.hpp"
#include "loopbench/sim/device_params.hpp"
#include "loopbench/tasks/task.hpp"

namespace loopbench::bench {

// Everything needed to reproduce one run. Learner runs carry a HyperConfig
// (the network seed lives inside it); scripted runs name a controller.
struct RunPlan {
  tasks::TaskId task = tasks::TaskId::DxlReacher;
  ClockMode clock = ClockMode::Virtual;
  std::string agent = "random";             // algorithm or scripted controller
  std::optional<rl::HyperConfig> config;    // present for learner runs
  std::uint64_t seed = 1;                   // run seed (environment stream)
  long total_steps = 0;                     // 0 selects the task's benchmark budget
  sim::DeviceParams devices{};
};

struct RunResult {
  RunRecord record;
  rl::LearnerDiag diag{};                 // zeros for scripted agents
  std::vector<rl::NamedArray> params;     // final learner parameters, empty otherwise
};

// Runs episodes until the step budget is spent (the episode that crosses the
// budget finishes). Episodes stream to `log` as they end when provided.
// Throws std::invalid_argument on inconsistent plans (unknown agent, learner
// agent without a config, config/agent algorithm mismatch).
RunResult execute_run(const RunPlan& plan, std::ostream* log = nullptr);

}  // namespace loopbench::bench
