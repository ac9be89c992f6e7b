#include "loopbench/tasks/task.hpp"

#include <stdexcept>

namespace loopbench::tasks {

namespace {

const TaskSpec kTasks[kTaskCount] = {
    {TaskId::UrReacher2, "ur-reacher-2", 8, 2, {0.040, 0.008, 4.0}, {-0.3, 0.3}, 150000},
    {TaskId::UrReacher6, "ur-reacher-6", 21, 6, {0.040, 0.008, 4.0}, {-0.3, 0.3}, 200000},
    {TaskId::DxlReacher, "dxl-reacher", 4, 1, {0.040, 0.010, 2.0}, {-100.0, 100.0}, 50000},
    {TaskId::DxlTracker, "dxl-tracker", 5, 1, {0.040, 0.010, 4.0}, {-50.0, 50.0}, 150000},
    {TaskId::CreateMover, "create-mover", 8, 2, {0.150, 0.015, 90.0}, {-150.0, 150.0}, 40000},
    {TaskId::CreateDocker, "create-docker", 20, 2, {0.045, 0.015, 30.0}, {-150.0, 150.0}, 300000},
};

}  // namespace

const TaskSpec& task_spec(TaskId id) { return kTasks[static_cast<int>(id)]; }

const TaskSpec* all_tasks() { return kTasks; }

TaskId task_from_string(const std::string& name) {
  for (const TaskSpec& t : kTasks)
    if (name == t.name) return t.id;
  throw std::invalid_argument("unknown task: " + name);
}

const char* to_string(TaskId id) { return task_spec(id).name; }

}  // namespace loopbench::tasks
