#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "loopbench/rng.hpp"
#include "loopbench/runtime/clock.hpp"
#include "loopbench/runtime/mailbox.hpp"
#include "loopbench/runtime/packet_ring.hpp"
#include "loopbench/sim/device_params.hpp"
#include "loopbench/tasks/task.hpp"

namespace loopbench::tasks {

using PacketView =
    std::variant<std::monostate, sim::Ur5Packet, sim::DxlPacket, sim::Create2Packet>;

// What an agent sees each action cycle: the assembled observation plus the
// newest raw device packet (scripted controllers work in sensor space).
struct StepView {
  std::span<const double> obs;
  PacketView packet;
  double time = 0.0;  // task-local episode time
  int step = 0;
};

class Agent {
 public:
  virtual ~Agent() = default;
  virtual int action_dim() const = 0;
  // Native-unit agents bypass the task action box (device limits still hold).
  virtual bool native_commands() const { return false; }
  virtual void begin_episode() {}
  virtual std::vector<double> act(const StepView& view) = 0;
};

struct StepOutcome {
  double reward = 0.0;  // already scaled by the action cycle time
  bool done = false;
  std::string cause;  // set when done
};

struct EnvCounters {
  std::uint64_t overruns = 0;      // wall mode: actions posted after their deadline
  std::uint64_t obs_clamped = 0;   // observation components outside declared bounds
};

// A task environment owns the simulated device, the packet ring, and the
// action mailbox, and advances them on the two-rate schedule. Device state
// persists across episodes within one run; reset() performs the task's
// between-episode script.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual const TaskSpec& spec() const = 0;
  virtual ClockMode clock_mode() const = 0;

  virtual void reset(Rng& env_rng) = 0;
  virtual std::vector<double> observe() = 0;
  virtual PacketView newest_packet() const = 0;
  // Runs one action cycle under the given action. Normalized actions are
  // clamped to [-1,1] and mapped to native units; native actions pass through.
  virtual StepOutcome apply(std::span<const double> action, bool native) = 0;

  virtual double episode_time() const = 0;
  virtual int step_index() const = 0;
  virtual const EnvCounters& counters() const = 0;
  // Packets pushed during the most recent action cycle.
  virtual int packets_last_cycle() const = 0;
};

std::unique_ptr<Environment> make_environment(TaskId id, ClockMode mode,
                                              const sim::DeviceParams& params = {});

struct EpisodeResult {
  double episode_return = 0.0;
  int steps = 0;
  std::string cause = "step-limit";
  std::vector<double> rewards;
};

// Transition stream for learners; obs/next_obs are borrowed views valid only
// during the callback.
struct Transition {
  std::span<const double> obs;
  std::span<const double> action;  // as returned by the agent (pre-clamp)
  double reward = 0.0;
  bool done = false;
  std::span<const double> next_obs;
};

using TransitionHook = std::function<void(const Transition&)>;

EpisodeResult run_episode(Environment& env, Agent& agent, Rng& env_rng,
                          const TransitionHook& hook = nullptr);

}  // namespace loopbench::tasks
