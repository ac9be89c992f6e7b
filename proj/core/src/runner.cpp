#include "loopbench/bench/runner.hpp"

#include <chrono>
#include <stdexcept>

#include "loopbench/rng.hpp"
#include "loopbench/scripted/scripted.hpp"
#include "loopbench/tasks/env.hpp"

namespace loopbench::bench {

namespace {

bool is_algorithm_name(const std::string& name) {
  return name == "trpo" || name == "ppo" || name == "softq" || name == "ddpg";
}

}  // namespace

RunResult execute_run(const RunPlan& plan, std::ostream* log) {
  const tasks::TaskSpec& spec = tasks::task_spec(plan.task);
  const long budget = plan.total_steps > 0 ? plan.total_steps : spec.benchmark_steps;

  std::string agent_name = plan.agent;
  if (agent_name.empty() && plan.config) agent_name = rl::algo_to_string(plan.config->algo);
  const bool learner_run = is_algorithm_name(agent_name);
  if (learner_run && !plan.config)
    throw std::invalid_argument("learner agent '" + agent_name + "' needs a hyper-parameter config");
  if (learner_run && rl::algo_to_string(plan.config->algo) != agent_name)
    throw std::invalid_argument("agent '" + agent_name + "' does not match the config algorithm '" +
                                rl::algo_to_string(plan.config->algo) + "'");

  RunResult out;
  RunHeader& h = out.record.header;
  h.task = spec.name;
  h.agent = agent_name;
  h.clock = to_string(plan.clock);
  h.seed = plan.seed;
  h.seed_net = learner_run ? plan.config->seed_net : 0;
  h.total_steps = budget;
  if (plan.config) h.config = plan.config->to_kv();
  h.devices = plan.devices.to_kv();

  auto env = tasks::make_environment(plan.task, plan.clock, plan.devices);
  std::unique_ptr<rl::Learner> learner;
  std::unique_ptr<tasks::Agent> scripted;
  tasks::Agent* agent = nullptr;
  tasks::TransitionHook hook;
  if (learner_run) {
    learner = rl::make_learner(spec, *plan.config, plan.config->seed_net);
    agent = learner.get();
    hook = [&](const tasks::Transition& t) { learner->record(t); };
  } else {
    scripted = scripted::make_scripted_agent(agent_name, spec, plan.devices,
                                             mix_seed(plan.seed, 3));
    agent = scripted.get();
  }

  Rng env_rng(mix_seed(plan.seed, 1));
  std::optional<RunRecordWriter> writer;
  if (log) writer.emplace(*log, h);

  const auto wall_start = std::chrono::steady_clock::now();
  long steps_done = 0;
  int index = 0;
  while (steps_done < budget) {
    const tasks::EpisodeResult res = tasks::run_episode(*env, *agent, env_rng, hook);
    steps_done += res.steps;
    EpisodeEntry e;
    e.index = index++;
    e.steps = res.steps;
    e.end_step = steps_done;
    e.episode_return = res.episode_return;
    e.end_time = plan.clock == ClockMode::Virtual
                     ? static_cast<double>(steps_done) * spec.cycles.action_cycle_s
                     : std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                                     wall_start)
                           .count();
    e.cause = res.cause;
    out.record.episodes.push_back(e);
    if (writer) writer->episode(out.record.episodes.back());
  }

  RunSummary& s = out.record.summary;
  s.episodes = static_cast<int>(out.record.episodes.size());
  s.mean_return = average_return(out.record);
  s.end_time = out.record.episodes.back().end_time;
  s.overruns = env->counters().overruns;
  s.obs_clamped = env->counters().obs_clamped;
  out.record.has_summary = true;
  if (writer) writer->finish(s);

  if (learner) {
    out.diag = learner->diag();
    out.params = learner->snapshot();
  }
  return out;
}

}  // namespace loopbench::bench
