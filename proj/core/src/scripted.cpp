#include "loopbench/scripted/scripted.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "loopbench/sim/ur5.hpp"

namespace loopbench::scripted {

MovejAgent::MovejAgent(int dof, const sim::Ur5Params& params, double move_seconds)
    : dof_(dof), p_(params), move_seconds_(move_seconds) {
  if (dof != 2 && dof != 6) throw std::invalid_argument("movej drives 2 or 6 joints");
}

std::vector<double> MovejAgent::act(const tasks::StepView& view) {
  const auto& pk = std::get<sim::Ur5Packet>(view.packet);
  std::array<double, 3> target{};
  if (dof_ == 2) {
    const auto tip = sim::ur5_fingertip_planar(p_, pk.q[1], pk.q[2]);
    target = {tip[0] + view.obs[6], tip[1] + view.obs[7], 0.0};
  } else {
    const auto tip = sim::ur5_fingertip(pk.q);
    target = {tip[0] + view.obs[18], tip[1] + view.obs[19], tip[2] + view.obs[20]};
  }

  const bool moved = std::abs(target[0] - plan_target_[0]) > 1e-9 ||
                     std::abs(target[1] - plan_target_[1]) > 1e-9 ||
                     std::abs(target[2] - plan_target_[2]) > 1e-9;
  if (!planned_ || moved) {
    std::array<double, 6> goal = pk.q;
    bool ok = true;
    if (dof_ == 2) {
      ok = sim::ur5_ik_planar(p_, {target[0], target[1]}, 1.0, goal[1], goal[2]);
    } else {
      goal = sim::ur5_ik_position(pk.q, {target[0], target[1], target[2]});
    }
    if (ok) {
      // Trapezoidal profile, ramps a third of the move each: the plateau
      // speed covers the distance in two thirds of the allotted time.
      for (int i = 0; i < 6; ++i) peak_[i] = 1.5 * (goal[i] - pk.q[i]) / move_seconds_;
      plan_start_ = view.time;
      plan_target_ = target;
      planned_ = true;
    }
  }

  double f = 0.0;
  if (planned_) {
    const double t = view.time - plan_start_;
    const double ramp = move_seconds_ / 3.0;
    if (t < ramp)
      f = t / ramp;
    else if (t < move_seconds_ - ramp)
      f = 1.0;
    else if (t < move_seconds_)
      f = (move_seconds_ - t) / ramp;
  }

  std::vector<double> out(dof_, 0.0);
  if (dof_ == 2) {
    out[0] = peak_[1] * f;
    out[1] = peak_[2] * f;
  } else {
    for (int i = 0; i < 6; ++i) out[i] = peak_[i] * f;
  }
  return out;
}

PidAgent::PidAgent(const PidGains& gains) : gains_(gains) {}

void PidAgent::begin_episode() {
  integral_ = 0.0;
  prev_error_ = 0.0;
  prev_time_ = 0.0;
  have_prev_ = false;
}

std::vector<double> PidAgent::act(const tasks::StepView& view) {
  const double error = view.obs[2] - view.obs[0];
  const double dt = view.time - prev_time_;
  double derivative = 0.0;
  if (have_prev_ && dt > 0.0) {
    integral_ = std::clamp(integral_ + error * dt, -gains_.integral_limit, gains_.integral_limit);
    derivative = (error - prev_error_) / dt;
  }
  prev_error_ = error;
  prev_time_ = view.time;
  have_prev_ = true;
  return {gains_.kp * error + gains_.ki * integral_ + gains_.kd * derivative};
}

MoverScriptAgent::MoverScriptAgent(const sim::Create2Params& params) : p_(params) {}

std::vector<double> MoverScriptAgent::act(const tasks::StepView& view) {
  const auto& pk = std::get<sim::Create2Packet>(view.packet);
  // Only the two straight-ahead sensors gate the turn; strict inequality.
  const double front_l = pk.wall_signal[2] / p_.ir_s_raw_max;
  const double front_r = pk.wall_signal[3] / p_.ir_s_raw_max;
  if (front_l > 0.55 || front_r > 0.55) return {-150.0, 150.0};
  return {150.0, 150.0};
}

SeekDockAgent::SeekDockAgent(const sim::Create2Params& params, double action_cycle_s)
    : ctrl_(params), dt_(action_cycle_s) {}

std::vector<double> SeekDockAgent::act(const tasks::StepView& view) {
  const auto& pk = std::get<sim::Create2Packet>(view.packet);
  const sim::WheelCmd cmd = ctrl_.step(pk, dt_);
  return {cmd.left_mm_s, cmd.right_mm_s};
}

std::vector<double> RandomAgent::act(const tasks::StepView&) {
  std::vector<double> out(dim_);
  for (double& v : out) v = rng_.uniform(-1.0, 1.0);
  return out;
}

std::unique_ptr<tasks::Agent> make_scripted_agent(const std::string& name,
                                                  const tasks::TaskSpec& spec,
                                                  const sim::DeviceParams& params,
                                                  std::uint64_t seed) {
  using tasks::TaskId;
  const TaskId id = spec.id;
  const bool ur = id == TaskId::UrReacher2 || id == TaskId::UrReacher6;
  const bool dxl = id == TaskId::DxlReacher || id == TaskId::DxlTracker;
  if (name == "movej") {
    if (!ur) throw std::invalid_argument("movej only fits the arm tasks");
    return std::make_unique<MovejAgent>(spec.action_dim, params.ur5);
  }
  if (name == "pid") {
    if (!dxl) throw std::invalid_argument("pid only fits the motor tasks");
    return std::make_unique<PidAgent>();
  }
  if (name == "mover-script") {
    if (id != TaskId::CreateMover) throw std::invalid_argument("mover-script only fits create-mover");
    return std::make_unique<MoverScriptAgent>(params.create2);
  }
  if (name == "seek-dock") {
    if (id != TaskId::CreateDocker) throw std::invalid_argument("seek-dock only fits create-docker");
    return std::make_unique<SeekDockAgent>(params.create2, spec.cycles.action_cycle_s);
  }
  if (name == "random") return std::make_unique<RandomAgent>(spec.action_dim, seed);
  if (name == "zero") return std::make_unique<ZeroAgent>(spec.action_dim);
  throw std::invalid_argument("unknown scripted agent: " + name);
}

}  // namespace loopbench::scripted
