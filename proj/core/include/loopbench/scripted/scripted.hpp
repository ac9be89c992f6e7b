#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "loopbench/rng.hpp"
#include "loopbench/sim/seek_dock.hpp"
#include "loopbench/sim/ur5.hpp"
#include "loopbench/tasks/env.hpp"

namespace loopbench::scripted {

struct PidGains {
  double kp = 40.0;
  double ki = 0.0;
  double kd = 4.9;
  double integral_limit = 500.0;  // anti-windup clamp on the accumulated error
};

// Joint-interpolated move: a trapezoidal velocity profile (ramps one third of
// the move time each) toward the inverse-kinematics solution of the target
// point, replanned whenever the target moves.
class MovejAgent : public tasks::Agent {
 public:
  MovejAgent(int dof, const sim::Ur5Params& params, double move_seconds = 2.0);

  int action_dim() const override { return dof_; }
  bool native_commands() const override { return true; }
  void begin_episode() override { planned_ = false; }
  std::vector<double> act(const tasks::StepView& view) override;

 private:
  int dof_;
  sim::Ur5Params p_;
  double move_seconds_;
  bool planned_ = false;
  double plan_start_ = 0.0;
  std::array<double, 3> plan_target_{};
  std::array<double, 6> peak_{};
};

// Position servo on the motor angle; emits native current commands without a
// command-side clamp (the device applies its own limit).
class PidAgent : public tasks::Agent {
 public:
  explicit PidAgent(const PidGains& gains = {});

  int action_dim() const override { return 1; }
  bool native_commands() const override { return true; }
  void begin_episode() override;
  std::vector<double> act(const tasks::StepView& view) override;

  const PidGains& gains() const { return gains_; }

 private:
  PidGains gains_;
  double integral_ = 0.0;
  double prev_error_ = 0.0;
  double prev_time_ = 0.0;
  bool have_prev_ = false;
};

// Drive forward until either straight-ahead wall sensor reads more than 55%
// of its raw ceiling, then spin in place.
class MoverScriptAgent : public tasks::Agent {
 public:
  explicit MoverScriptAgent(const sim::Create2Params& params);

  int action_dim() const override { return 2; }
  bool native_commands() const override { return true; }
  std::vector<double> act(const tasks::StepView& view) override;

 private:
  sim::Create2Params p_;
};

// The docking controller as an agent.
class SeekDockAgent : public tasks::Agent {
 public:
  explicit SeekDockAgent(const sim::Create2Params& params, double action_cycle_s);

  int action_dim() const override { return 2; }
  bool native_commands() const override { return true; }
  void begin_episode() override { ctrl_.reset(); }
  std::vector<double> act(const tasks::StepView& view) override;

 private:
  sim::SeekDockController ctrl_;
  double dt_;
};

class RandomAgent : public tasks::Agent {
 public:
  RandomAgent(int action_dim, std::uint64_t seed) : dim_(action_dim), rng_(seed) {}

  int action_dim() const override { return dim_; }
  std::vector<double> act(const tasks::StepView& view) override;

 private:
  int dim_;
  Rng rng_;
};

class ZeroAgent : public tasks::Agent {
 public:
  explicit ZeroAgent(int action_dim) : dim_(action_dim) {}

  int action_dim() const override { return dim_; }
  std::vector<double> act(const tasks::StepView&) override {
    return std::vector<double>(dim_, 0.0);
  }

 private:
  int dim_;
};

// Baseline agents by name: movej, pid, mover-script, seek-dock, random, zero.
// Throws when the name or the task/agent pairing makes no sense.
std::unique_ptr<tasks::Agent> make_scripted_agent(const std::string& name,
                                                  const tasks::TaskSpec& spec,
                                                  const sim::DeviceParams& params,
                                                  std::uint64_t seed);

}  // namespace loopbench::scripted
