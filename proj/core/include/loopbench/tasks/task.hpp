#pragma once

#include <string>

#include "loopbench/runtime/cycle.hpp"
#include "loopbench/runtime/normalize.hpp"

namespace loopbench::tasks {

enum class TaskId {
  UrReacher2,
  UrReacher6,
  DxlReacher,
  DxlTracker,
  CreateMover,
  CreateDocker,
};

inline constexpr int kTaskCount = 6;

struct TaskSpec {
  TaskId id;
  const char* name;
  int obs_dim;
  int action_dim;
  CycleConfig cycles;
  Bounds action_bounds;    // native actuator units, one symmetric box per task
  long benchmark_steps;    // per-run step budget of the "paper" preset
};

const TaskSpec& task_spec(TaskId id);
TaskId task_from_string(const std::string& name);
const char* to_string(TaskId id);

// All six, in a fixed enumeration order.
const TaskSpec* all_tasks();

}  // namespace loopbench::tasks
