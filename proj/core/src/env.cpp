#include "loopbench/tasks/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "loopbench/sim/seek_dock.hpp"
#include "loopbench/tasks/rewards.hpp"
#include "loopbench/tasks/targets.hpp"

namespace loopbench::tasks {

namespace {

constexpr double kPi = 3.14159265358979312;

std::array<double, 6> to_native(const ActionCmd& cmd, const Bounds& bounds) {
  std::array<double, 6> out{};
  for (int i = 0; i < cmd.dim; ++i)
    out[i] = cmd.native ? cmd.v[i] : denormalize(cmd.v[i], bounds);
  return out;
}

// Shared two-rate plumbing: mailbox, clocks, the step/cycle schedule, reset
// scripting, and the wall-mode device thread. Concrete tasks implement the
// device tick, observation assembly, and the per-cycle reward.
class EnvBase : public Environment {
 public:
  EnvBase(const TaskSpec& spec, ClockMode mode)
      : spec_(spec), mode_(mode), clock_(mode), packets_per_cycle_(spec.cycles.packets_per_action()) {}

  const TaskSpec& spec() const override { return spec_; }
  ClockMode clock_mode() const override { return mode_; }
  double episode_time() const override { return clock_.now() - episode_start_; }
  int step_index() const override { return steps_; }
  const EnvCounters& counters() const override { return counters_; }
  int packets_last_cycle() const override { return packets_last_cycle_; }

  std::vector<double> observe() override {
    std::vector<double> obs(spec_.obs_dim, 0.0);
    assemble_obs(obs);
    return obs;
  }

  StepOutcome apply(std::span<const double> action, bool native) override {
    if (static_cast<int>(action.size()) != spec_.action_dim)
      throw std::invalid_argument("action dimension mismatch");
    ActionCmd cmd;
    cmd.dim = spec_.action_dim;
    cmd.native = native;
    for (int i = 0; i < cmd.dim; ++i)
      cmd.v[i] = native ? action[i] : std::clamp(action[i], -1.0, 1.0);
    for (int i = 0; i < cmd.dim; ++i) {
      const double nat = native ? action[i] : denormalize(cmd.v[i], spec_.action_bounds);
      prev_action_[i] = std::clamp(normalize(nat, spec_.action_bounds), -1.0, 1.0);
    }
    post(cmd);
    run_one_cycle();
    ++steps_;

    StepOutcome out = evaluate_cycle();
    out.reward = scale_reward(out.reward, spec_.cycles.action_cycle_s);
    if (!out.done && steps_ >= spec_.cycles.episode_steps()) {
      out.done = true;
      out.cause = "step-limit";
    }
    return out;
  }

 protected:
  virtual void device_tick(double dt) = 0;
  virtual void assemble_obs(std::vector<double>& obs) = 0;
  // Reward in per-second units; done/cause for early task termination.
  virtual StepOutcome evaluate_cycle() = 0;
  virtual std::uint64_t ring_count() const = 0;
  virtual void ring_clear() = 0;

  void post(const ActionCmd& cmd) { mailbox_.post(cmd); }

  ActionCmd current_cmd() const { return mailbox_.read(); }

  double rw() const { return device_readwrite_cycle_; }

  void set_device_cycle(double rw_cycle) {
    device_readwrite_cycle_ = rw_cycle;
    const double q = spec_.cycles.action_cycle_s / rw_cycle;
    ticks_per_cycle_ = static_cast<int>(std::floor(q + 1e-6));
    if (mode_ == ClockMode::Virtual && std::abs(q - ticks_per_cycle_) > 1e-6)
      throw std::invalid_argument("virtual mode needs an integer device-tick count per action cycle");
  }

  // Runs the device for one action cycle under the posted command.
  void run_one_cycle() {
    const std::uint64_t before = ring_count();
    if (mode_ == ClockMode::Virtual) {
      for (int i = 0; i < ticks_per_cycle_; ++i) {
        clock_.advance(device_readwrite_cycle_);
        device_tick(device_readwrite_cycle_);
      }
    } else {
      ensure_device_thread();
      const double now = clock_.now();
      if (next_deadline_ <= 0.0) next_deadline_ = now;
      next_deadline_ += spec_.cycles.action_cycle_s;
      if (now > next_deadline_) {
        ++counters_.overruns;  // late action: the device held the previous one
        next_deadline_ = now + spec_.cycles.action_cycle_s;
      }
      clock_.sleep_until(next_deadline_);
    }
    packets_last_cycle_ = static_cast<int>(ring_count() - before);
  }

  // Timed open-loop script (resets); cmd gives native wheel/joint values.
  void run_script(double seconds, const std::function<std::array<double, 6>(double)>& cmd) {
    const int ticks = std::max(1, static_cast<int>(std::llround(seconds / device_readwrite_cycle_)));
    for (int i = 0; i < ticks; ++i) {
      ActionCmd c;
      c.dim = spec_.action_dim;
      c.native = true;
      const auto v = cmd(i * device_readwrite_cycle_);
      for (int j = 0; j < 6; ++j) c.v[j] = v[j];
      post(c);
      if (mode_ == ClockMode::Virtual) {
        clock_.advance(device_readwrite_cycle_);
        device_tick(device_readwrite_cycle_);
      } else {
        ensure_device_thread();
        clock_.sleep_until(clock_.now() + device_readwrite_cycle_);
      }
    }
  }

  // Clears history, issues a zero command, and runs one cycle so the first
  // observation of the episode has fresh packets.
  void begin_episode() {
    ActionCmd zero;
    zero.dim = spec_.action_dim;
    zero.native = true;
    post(zero);
    ring_clear();
    if (mode_ == ClockMode::Virtual) {
      for (int i = 0; i < ticks_per_cycle_; ++i) {
        clock_.advance(device_readwrite_cycle_);
        device_tick(device_readwrite_cycle_);
      }
    } else {
      ensure_device_thread();
      clock_.sleep_until(clock_.now() + spec_.cycles.action_cycle_s);
    }
    steps_ = 0;
    packets_last_cycle_ = ticks_per_cycle_;
    next_deadline_ = mode_ == ClockMode::Wall ? clock_.now() : 0.0;
    episode_start_ = clock_.now();
    prev_action_.fill(0.0);
  }

  void ensure_device_thread() {
    if (mode_ != ClockMode::Wall || device_thread_.joinable()) return;
    device_thread_ = std::jthread([this](std::stop_token st) {
      double next = clock_.now() + device_readwrite_cycle_;
      while (!st.stop_requested()) {
        clock_.sleep_until(next);
        device_tick(device_readwrite_cycle_);
        next += device_readwrite_cycle_;
      }
    });
  }

  void stop_device_thread() {
    if (device_thread_.joinable()) {
      device_thread_.request_stop();
      device_thread_.join();
    }
  }

  double clamped_norm(double v, const Bounds& b) {
    if (!in_bounds(v, b)) ++counters_.obs_clamped;
    return normalize(v, b);
  }

  TaskSpec spec_;
  ClockMode mode_;
  Clock clock_;
  Mailbox<ActionCmd> mailbox_;
  EnvCounters counters_;
  std::array<double, 6> prev_action_{};
  int packets_per_cycle_ = 0;
  int ticks_per_cycle_ = 0;
  double device_readwrite_cycle_ = 0.0;
  int steps_ = 0;
  int packets_last_cycle_ = 0;
  double episode_start_ = 0.0;
  double next_deadline_ = 0.0;
  std::jthread device_thread_;
};

// ---------------------------------------------------------------- UR reacher

class UrReacherEnv final : public EnvBase {
 public:
  UrReacherEnv(const TaskSpec& spec, ClockMode mode, const sim::DeviceParams& dp, int dof)
      : EnvBase(spec, mode), p_(dp.ur5), dof_(dof) {
    set_device_cycle(p_.readwrite_cycle_s);
    dev_.q = dof_ == 2 ? p_.home : p_.home6;
    if (dof_ == 2) {
      const auto c = sim::ur5_fingertip_planar(p_, dev_.q[1], dev_.q[2]);
      center2_ = c;
    } else {
      center3_ = sim::ur5_fingertip(dev_.q);
    }
  }
  ~UrReacherEnv() override { stop_device_thread(); }

  void reset(Rng& rng) override {
    // Repositioning writes device state directly; pause the wall-mode ticker.
    if (mode_ == ClockMode::Wall) stop_device_thread();
    dev_.q = dof_ == 2 ? p_.home : p_.home6;
    dev_.v.fill(0.0);
    if (dof_ == 2) {
      target2_ = draw_planar_target(rng, center2_);
    } else {
      target3_ = draw_spatial_target(rng, center3_);
    }
    begin_episode();
  }

  PacketView newest_packet() const override { return ring_.newest(); }

 protected:
  void device_tick(double dt) override {
    const ActionCmd cmd = current_cmd();
    const auto nat = to_native(cmd, spec_.action_bounds);
    std::array<double, 6> vel{};
    if (dof_ == 2) {
      vel[1] = nat[0];
      vel[2] = nat[1];
    } else {
      for (int i = 0; i < 6; ++i) vel[i] = nat[i];
    }
    sim::ur5_step(dev_, p_, vel, dt);
    ring_.push(sim::ur5_packet(dev_));
  }

  void assemble_obs(std::vector<double>& obs) override {
    const sim::Ur5Packet pk = ring_.newest();
    int k = 0;
    if (dof_ == 2) {
      obs[k++] = pk.q[1];
      obs[k++] = pk.q[2];
      obs[k++] = pk.v[1];
      obs[k++] = pk.v[2];
      obs[k++] = prev_action_[0];
      obs[k++] = prev_action_[1];
      const auto tip = sim::ur5_fingertip_planar(p_, pk.q[1], pk.q[2]);
      obs[k++] = target2_[0] - tip[0];
      obs[k++] = target2_[1] - tip[1];
    } else {
      for (int i = 0; i < 6; ++i) obs[k++] = pk.q[i];
      for (int i = 0; i < 6; ++i) obs[k++] = pk.v[i];
      for (int i = 0; i < 6; ++i) obs[k++] = prev_action_[i];
      const auto tip = sim::ur5_fingertip(pk.q);
      for (int i = 0; i < 3; ++i) obs[k++] = target3_[i] - tip[i];
    }
  }

  StepOutcome evaluate_cycle() override {
    const sim::Ur5Packet pk = ring_.newest();
    double d;
    if (dof_ == 2) {
      const auto tip = sim::ur5_fingertip_planar(p_, pk.q[1], pk.q[2]);
      d = std::hypot(target2_[0] - tip[0], target2_[1] - tip[1]);
    } else {
      const auto tip = sim::ur5_fingertip(pk.q);
      d = std::sqrt((target3_[0] - tip[0]) * (target3_[0] - tip[0]) +
                    (target3_[1] - tip[1]) * (target3_[1] - tip[1]) +
                    (target3_[2] - tip[2]) * (target3_[2] - tip[2]));
    }
    return {ur_reacher_reward(d), false, ""};
  }

  std::uint64_t ring_count() const override { return ring_.count(); }
  void ring_clear() override { ring_.clear(); }

 private:
  sim::Ur5Params p_;
  int dof_;
  sim::Ur5State dev_;
  PacketRing<sim::Ur5Packet> ring_{64};
  sim::Vec2 center2_{}, target2_{};
  sim::Vec3 center3_{}, target3_{};
};

// ----------------------------------------------------------------- DXL tasks

class DxlEnv final : public EnvBase {
 public:
  DxlEnv(const TaskSpec& spec, ClockMode mode, const sim::DeviceParams& dp, bool tracker)
      : EnvBase(spec, mode), p_(dp.dxl), tracker_(tracker) {
    set_device_cycle(p_.readwrite_cycle_s);
  }
  ~DxlEnv() override { stop_device_thread(); }

  void reset(Rng& rng) override {
    if (mode_ == ClockMode::Wall) stop_device_thread();
    dev_.angle = 0.0;
    dev_.velocity = 0.0;
    if (tracker_) {
      schedule_ = draw_tracker_schedule(rng, spec_.cycles.episode_seconds);
    } else {
      target_ = draw_angle_target(rng);
    }
    begin_episode();
  }

  PacketView newest_packet() const override { return ring_.newest(); }

  double target_now() const { return tracker_ ? schedule_.position(episode_time()) : target_; }

 protected:
  void device_tick(double dt) override {
    const ActionCmd cmd = current_cmd();
    const auto nat = to_native(cmd, spec_.action_bounds);
    sim::dxl_step(dev_, p_, nat[0], dt);
    ring_.push(sim::dxl_packet(dev_, std::clamp(nat[0], -p_.current_limit, p_.current_limit)));
  }

  void assemble_obs(std::vector<double>& obs) override {
    const sim::DxlPacket pk = ring_.newest();
    int k = 0;
    obs[k++] = pk.angle;
    obs[k++] = pk.velocity;
    if (tracker_) {
      const double t = episode_time();
      obs[k++] = schedule_.position(t);
      // Not enough history in the first 50 ms: repeat the current target.
      obs[k++] = t >= 0.05 ? schedule_.position(t - 0.05) : schedule_.position(t);
    } else {
      obs[k++] = target_;
    }
    obs[k++] = prev_action_[0];
  }

  StepOutcome evaluate_cycle() override {
    const sim::DxlPacket pk = ring_.newest();
    const double d = std::abs(target_now() - pk.angle);
    return {dxl_reacher_reward(d), false, ""};
  }

  std::uint64_t ring_count() const override { return ring_.count(); }
  void ring_clear() override { ring_.clear(); }

 private:
  sim::DxlParams p_;
  bool tracker_;
  sim::DxlState dev_;
  PacketRing<sim::DxlPacket> ring_{64};
  double target_ = 0.0;
  TrackerSchedule schedule_;
};

// -------------------------------------------------------------- Create tasks

class CreateEnv final : public EnvBase {
 public:
  CreateEnv(const TaskSpec& spec, ClockMode mode, const sim::DeviceParams& dp, bool docker)
      : EnvBase(spec, mode), p_(dp.create2), docker_(docker) {
    set_device_cycle(p_.readwrite_cycle_s);
    dev_.x = p_.arena_width * 0.5;
    dev_.y = p_.arena_depth * 0.5;
    dev_.heading = docker_ ? kPi / 2.0 : 0.0;
    first_reset_ = true;
  }
  ~CreateEnv() override { stop_device_thread(); }

  void reset(Rng& rng) override {
    if (docker_) {
      reset_docker(rng);
    } else {
      // Back away from whatever the robot last ran into, then stop.
      if (!first_reset_)
        run_script(0.5, [](double) { return std::array<double, 6>{-150.0, -150.0}; });
    }
    first_reset_ = false;
    begin_episode();
  }

  PacketView newest_packet() const override { return ring_.newest(); }

  bool docked() const { return dev_.docked; }
  const sim::Create2State& device_state() const { return dev_; }

 protected:
  void device_tick(double dt) override {
    const ActionCmd cmd = current_cmd();
    const auto nat = to_native(cmd, spec_.action_bounds);
    ring_.push(sim::create2_step(dev_, p_, nat[0], nat[1], dt));
  }

  void assemble_obs(std::vector<double>& obs) override {
    const sim::Create2Packet pk = ring_.newest();
    int k = 0;
    if (!docker_) {
      for (int i = 0; i < 6; ++i) {
        const double d = sim::signal_to_distance(pk.wall_signal[i], p_);
        obs[k++] = clamped_norm(d, Bounds{p_.ir_range_min, p_.ir_range_max});
      }
      obs[k++] = prev_action_[0];
      obs[k++] = prev_action_[1];
      return;
    }
    obs[k++] = pk.charging ? 1.0 : 0.0;
    for (int i = 0; i < 6; ++i)
      obs[k++] = 2.0 * std::clamp(pk.wall_signal[i] / p_.ir_s_raw_max, 0.0, 1.0) - 1.0;
    obs[k++] = pk.bump_left ? 1.0 : 0.0;
    obs[k++] = pk.bump_right ? 1.0 : 0.0;
    obs[k++] = prev_action_[0];
    obs[k++] = prev_action_[1];
    const auto recent = ring_.latest(20);
    for (int b = 0; b < 9; ++b) {
      double sum = 0.0;
      for (const auto& q : recent) sum += q.ir_dock[b] ? 1.0 : 0.0;
      obs[k++] = sum / 20.0;  // missing history counts as zeros
    }
  }

  StepOutcome evaluate_cycle() override {
    if (!docker_) {
      const auto recent = ring_.latest(std::min(packets_last_cycle(), 10));
      const double raw = mover_reward(recent);
      for (const auto& pk : recent)
        if (pk.bump_left || pk.bump_right) return {raw, true, "bump"};
      return {raw, false, ""};
    }
    const int n = CycleConfig::whole_quotient(spec_.cycles.action_cycle_s, p_.readwrite_cycle_s);
    const auto recent = ring_.latest(20);
    const auto parts = docker_reward(recent, n);
    return {parts.raw, false, ""};
  }

  std::uint64_t ring_count() const override { return ring_.count(); }
  void ring_clear() override { ring_.clear(); }

 private:
  void reset_docker(Rng& rng) {
    const bool prev_success = dev_.docked;
    if (prev_success) {
      sim::create2_undock(dev_);
      run_script(0.75, [](double) { return std::array<double, 6>{-100.0, -100.0}; });
      const double wl = rng.uniform(-250.0, -50.0);
      const double wr = rng.uniform(-250.0, -50.0);
      run_script(2.5, [wl, wr](double) { return std::array<double, 6>{wl, wr}; });
      return;
    }
    // Failed episode (or first run): let the scripted dock seeker try for up
    // to 20 s, then back into the arena.
    sim::SeekDockController ctl(p_);
    const double t_end = clock_.now() + 20.0;
    while (clock_.now() < t_end && !dev_.docked) {
      sim::Create2Packet pk{};
      if (ring_.count() > 0) pk = ring_.newest();
      const auto wc = ctl.step(pk, device_readwrite_cycle_);
      ActionCmd c;
      c.dim = 2;
      c.native = true;
      c.v[0] = wc.left_mm_s;
      c.v[1] = wc.right_mm_s;
      post(c);
      if (mode_ == ClockMode::Virtual) {
        clock_.advance(device_readwrite_cycle_);
        device_tick(device_readwrite_cycle_);
      } else {
        ensure_device_thread();
        clock_.sleep_until(clock_.now() + device_readwrite_cycle_);
      }
    }
    if (dev_.docked) sim::create2_undock(dev_);
    run_script(3.25, [](double) { return std::array<double, 6>{-100.0, -100.0}; });
  }

  sim::Create2Params p_;
  bool docker_;
  sim::Create2State dev_;
  PacketRing<sim::Create2Packet> ring_{64};
  bool first_reset_ = true;
};

}  // namespace

std::unique_ptr<Environment> make_environment(TaskId id, ClockMode mode,
                                              const sim::DeviceParams& params) {
  const TaskSpec& spec = task_spec(id);
  switch (id) {
    case TaskId::UrReacher2:
      return std::make_unique<UrReacherEnv>(spec, mode, params, 2);
    case TaskId::UrReacher6:
      return std::make_unique<UrReacherEnv>(spec, mode, params, 6);
    case TaskId::DxlReacher:
      return std::make_unique<DxlEnv>(spec, mode, params, false);
    case TaskId::DxlTracker:
      return std::make_unique<DxlEnv>(spec, mode, params, true);
    case TaskId::CreateMover:
      return std::make_unique<CreateEnv>(spec, mode, params, false);
    case TaskId::CreateDocker:
      return std::make_unique<CreateEnv>(spec, mode, params, true);
  }
  throw std::invalid_argument("unknown task id");
}

EpisodeResult run_episode(Environment& env, Agent& agent, Rng& env_rng, const TransitionHook& hook) {
  env.reset(env_rng);
  agent.begin_episode();
  EpisodeResult res;
  std::vector<double> obs = env.observe();
  const int n = env.spec().cycles.episode_steps();
  res.rewards.reserve(n);
  for (int t = 0; t < n; ++t) {
    const StepView view{obs, env.newest_packet(), env.episode_time(), t};
    const std::vector<double> a = agent.act(view);
    const StepOutcome out = env.apply(a, agent.native_commands());
    std::vector<double> next_obs = env.observe();
    res.episode_return += out.reward;
    res.rewards.push_back(out.reward);
    ++res.steps;
    if (hook) hook(Transition{obs, a, out.reward, out.done, next_obs});
    obs = std::move(next_obs);
    if (out.done) {
      res.cause = out.cause;
      break;
    }
  }
  return res;
}

}  // namespace loopbench::tasks
