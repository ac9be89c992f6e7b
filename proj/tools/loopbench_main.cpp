// Command-line front end: run single experiments, sample and sweep
// hyper-parameter configurations, check repeatability, and build reports
// from persisted run records.
//
// Exit codes: 0 success, 2 configuration error, 3 divergence or validation
// failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "loopbench/bench/curve.hpp"
#include "loopbench/bench/repeatability.hpp"
#include "loopbench/bench/report.hpp"
#include "loopbench/bench/run_record.hpp"
#include "loopbench/bench/runner.hpp"
#include "loopbench/bench/stats.hpp"
#include "loopbench/config_kv.hpp"
#include "loopbench/rl/checkpoint.hpp"
#include "loopbench/rl/hyperconfig.hpp"
#include "loopbench/rng.hpp"
#include "loopbench/search/space.hpp"
#include "loopbench/search/table_row.hpp"
#include "loopbench/sim/device_params.hpp"
#include "loopbench/tasks/task.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

namespace lb = loopbench;
namespace fs = std::filesystem;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

lb::sim::DeviceParams load_devices(const std::string& path) {
  if (path.empty()) return {};
  return lb::sim::DeviceParams::from_kv(lb::KvFile::load(path));
}

std::optional<lb::rl::HyperConfig> load_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return lb::rl::HyperConfig::from_kv(lb::KvFile::load(path));
}

lb::bench::RunPlan make_plan(const std::string& task, const std::string& agent,
                             const std::string& config_path, const std::string& devices_path,
                             const std::string& clock, std::uint64_t seed, long steps) {
  lb::bench::RunPlan plan;
  plan.task = lb::tasks::task_from_string(task);
  plan.clock = lb::clock_mode_from_string(clock);
  plan.agent = agent;
  plan.config = load_config(config_path);
  plan.seed = seed;
  plan.total_steps = steps;
  plan.devices = load_devices(devices_path);
  return plan;
}

void run_one(lb::bench::RunPlan plan, const std::string& out_path,
             const std::string& params_path) {
  std::ofstream out;
  if (!out_path.empty()) {
    out.open(out_path, std::ios::trunc);
    if (!out) throw CliError("cannot open output file " + out_path);
  }
  const lb::bench::RunResult res = lb::bench::execute_run(plan, out.is_open() ? &out : nullptr);
  const auto& s = res.record.summary;
  std::cout << "task=" << res.record.header.task << " agent=" << res.record.header.agent
            << " seed=" << res.record.header.seed << " steps=" << res.record.header.total_steps
            << " episodes=" << s.episodes << " mean_return=" << lb::format_double(s.mean_return)
            << " overruns=" << s.overruns << '\n';
  if (!params_path.empty()) {
    if (res.params.empty()) throw CliError("agent '" + plan.agent + "' has no parameters to save");
    lb::rl::save_checkpoint(params_path, res.params);
  }
}

std::vector<lb::bench::RunRecord> load_records(const std::vector<std::string>& files) {
  if (files.empty()) throw CliError("no run record files given");
  std::vector<lb::bench::RunRecord> recs;
  recs.reserve(files.size());
  for (const std::string& f : files) recs.push_back(lb::bench::load_run_record(f));
  return recs;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw CliError("cannot open output file " + path);
  out << text;
}

std::vector<double> mean_returns_sorted_by_name(std::vector<std::string> files) {
  std::sort(files.begin(), files.end());
  std::vector<double> means;
  means.reserve(files.size());
  for (const std::string& f : files)
    means.push_back(lb::bench::average_return(lb::bench::load_run_record(f)));
  return means;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale robot-learning benchmark runner"};
  app.require_subcommand(1);

  // --- run ---
  auto* run = app.add_subcommand("run", "Run one experiment");
  std::string r_task, r_agent = "random", r_config, r_devices, r_clock = "virtual";
  std::string r_out, r_params;
  std::uint64_t r_seed = 1;
  long r_steps = 0;
  run->add_option("--task", r_task, "Task name")->required();
  run->add_option("--agent", r_agent,
                  "trpo|ppo|softq|ddpg or movej|pid|mover-script|seek-dock|random|zero");
  run->add_option("--config", r_config, "Hyper-parameter key-value file (learner agents)");
  run->add_option("--devices", r_devices, "Device parameter overrides, key-value file");
  run->add_option("--clock", r_clock, "virtual|wall");
  run->add_option("--seed", r_seed, "Run seed");
  run->add_option("--steps", r_steps, "Step budget; 0 uses the task's benchmark budget");
  run->add_option("--out", r_out, "Write the run record (JSON lines) here");
  run->add_option("--save-params", r_params, "Write final learner parameters here");

  // --- search ---
  auto* search = app.add_subcommand("search", "Sample a random-search configuration set");
  std::string s_algo, s_task, s_out;
  int s_count = 30;
  std::uint64_t s_seed = 1;
  search->add_option("--algo", s_algo, "trpo|ppo|softq|ddpg")->required();
  search->add_option("--task", s_task, "Task whose episode length anchors the time-scale draws")
      ->required();
  search->add_option("--count", s_count, "Number of configurations");
  search->add_option("--seed", s_seed, "Master seed");
  search->add_option("--out", s_out, "Output directory")->required();

  // --- sweep ---
  auto* sweep = app.add_subcommand("sweep", "Run every config in a directory");
  std::string w_task, w_configs, w_out, w_devices;
  std::vector<std::uint64_t> w_seeds{1};
  long w_steps = 0;
  int w_jobs = 1;
  sweep->add_option("--task", w_task, "Task name")->required();
  sweep->add_option("--configs", w_configs, "Directory of config_*.kv files")->required();
  sweep->add_option("--out", w_out, "Output directory for run records")->required();
  sweep->add_option("--devices", w_devices, "Device parameter overrides, key-value file");
  sweep->add_option("--seeds", w_seeds, "Run seeds (one run per config per seed)");
  sweep->add_option("--steps", w_steps, "Step budget; 0 uses the task's benchmark budget");
  sweep->add_option("--jobs", w_jobs, "Parallel workers");

  // --- repeat ---
  auto* repeat = app.add_subcommand("repeat", "Re-run one plan with an identical seed");
  std::string p_task, p_agent = "random", p_config, p_devices, p_clock = "virtual";
  std::uint64_t p_seed = 1;
  long p_steps = 0;
  int p_count = 4;
  repeat->add_option("--task", p_task, "Task name")->required();
  repeat->add_option("--agent", p_agent, "Agent name");
  repeat->add_option("--config", p_config, "Hyper-parameter key-value file");
  repeat->add_option("--devices", p_devices, "Device parameter overrides");
  repeat->add_option("--clock", p_clock, "Must be virtual");
  repeat->add_option("--seed", p_seed, "Run seed");
  repeat->add_option("--steps", p_steps, "Step budget; 0 uses the task's benchmark budget");
  repeat->add_option("--count", p_count, "Number of identical copies");

  // --- report ---
  auto* report = app.add_subcommand("report", "Statistics over persisted run records");
  std::vector<std::string> t_files, t_files_b;
  std::string t_summary, t_stats, t_curve, t_svg, t_corr;
  int t_bins = 20;
  report->add_option("files", t_files, "Run record files")->required();
  report->add_option("--summary", t_summary, "Per-run summary CSV ('-' for stdout)");
  report->add_option("--stats", t_stats, "Per-agent box-plot stats CSV over mean returns");
  report->add_option("--svg", t_svg, "Per-agent box plot SVG over mean returns");
  report->add_option("--curve", t_curve, "Mean learning curve CSV (needs >= 2 runs, one task)");
  report->add_option("--bins", t_bins, "Curve bins per run");
  report->add_option("--against", t_files_b,
                     "Second record set: correlate mean returns pairwise (sorted by filename)");
  report->add_option("--correlation", t_corr, "Correlation CSV output ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (run->parsed()) {
      run_one(make_plan(r_task, r_agent, r_config, r_devices, r_clock, r_seed, r_steps), r_out,
              r_params);
      return kExitOk;
    }

    if (search->parsed()) {
      const lb::rl::Algo algo = lb::rl::algo_from_string(s_algo);
      const lb::tasks::TaskSpec& spec = lb::tasks::task_spec(lb::tasks::task_from_string(s_task));
      if (s_count <= 0) throw CliError("--count must be positive");
      fs::create_directories(s_out);
      lb::KvFile manifest;
      manifest.set_string("kind", "search-manifest");
      manifest.set_int("version", 1);
      manifest.set_string("algo", s_algo);
      manifest.set_string("task", spec.name);
      manifest.set_int("count", s_count);
      manifest.set_int("seed", static_cast<long long>(s_seed));
      manifest.save(fs::path(s_out) / "manifest.kv");
      for (int k = 0; k < s_count; ++k) {
        lb::Rng rng(lb::mix_seed(s_seed, static_cast<std::uint64_t>(k)));
        const lb::rl::HyperConfig cfg = lb::search::sample_config(algo, spec, rng);
        char name[32];
        std::snprintf(name, sizeof name, "config_%03d.kv", k);
        cfg.to_kv().save(fs::path(s_out) / name);
      }
      std::cout << "wrote " << s_count << " configs to " << s_out << '\n';
      return kExitOk;
    }

    if (sweep->parsed()) {
      std::vector<fs::path> cfg_files;
      for (const auto& entry : fs::directory_iterator(w_configs)) {
        const std::string fn = entry.path().filename().string();
        if (fn.rfind("config_", 0) == 0 && entry.path().extension() == ".kv")
          cfg_files.push_back(entry.path());
      }
      std::sort(cfg_files.begin(), cfg_files.end());
      if (cfg_files.empty()) throw CliError("no config_*.kv files in " + w_configs);
      fs::create_directories(w_out);

      struct Job {
        fs::path cfg;
        std::uint64_t seed;
        fs::path out;
      };
      std::vector<Job> jobs;
      for (const fs::path& cf : cfg_files)
        for (std::uint64_t seed : w_seeds) {
          const std::string stem = cf.stem().string();
          jobs.push_back({cf, seed,
                          fs::path(w_out) / (stem + "_seed" + std::to_string(seed) + ".jsonl")});
        }
      const auto run_job = [&](const Job& job) {
        lb::bench::RunPlan plan;
        plan.task = lb::tasks::task_from_string(w_task);
        plan.clock = lb::ClockMode::Virtual;
        plan.config = lb::rl::HyperConfig::from_kv(lb::KvFile::load(job.cfg));
        plan.agent = lb::rl::algo_to_string(plan.config->algo);
        plan.seed = job.seed;
        plan.total_steps = w_steps;
        plan.devices = load_devices(w_devices);
        std::ofstream out(job.out, std::ios::trunc);
        if (!out) throw CliError("cannot open output file " + job.out.string());
        lb::bench::execute_run(plan, &out);
      };
      const int workers = std::max(1, w_jobs);
      std::size_t next = 0;
      while (next < jobs.size()) {
        std::vector<std::future<void>> batch;
        for (int k = 0; k < workers && next < jobs.size(); ++k, ++next)
          batch.push_back(std::async(std::launch::async, run_job, jobs[next]));
        for (auto& f : batch) f.get();
      }
      std::cout << "wrote " << jobs.size() << " run records to " << w_out << '\n';
      return kExitOk;
    }

    if (repeat->parsed()) {
      const lb::bench::RunPlan plan =
          make_plan(p_task, p_agent, p_config, p_devices, p_clock, p_seed, p_steps);
      const lb::bench::RepeatReport rep = lb::bench::repeatability_experiment(plan, p_count);
      std::cout << rep.detail << '\n';
      return rep.identical ? kExitOk : kExitValidation;
    }

    if (report->parsed()) {
      const std::vector<lb::bench::RunRecord> recs = load_records(t_files);
      const bool nothing_chosen = t_summary.empty() && t_stats.empty() && t_curve.empty() &&
                                  t_svg.empty() && t_files_b.empty();
      if (!t_summary.empty() || nothing_chosen)
        write_text(t_summary, lb::bench::summary_csv(recs));
      if (!t_stats.empty() || !t_svg.empty()) {
        std::map<std::string, std::vector<double>> by_agent;
        for (const auto& r : recs)
          by_agent[r.header.agent].push_back(lb::bench::average_return(r));
        std::vector<std::pair<std::string, lb::bench::SummaryStats>> groups;
        for (const auto& [agent, vals] : by_agent)
          groups.emplace_back(agent, lb::bench::tukey_summary(vals));
        if (!t_stats.empty()) write_text(t_stats, lb::bench::group_stats_csv(groups));
        if (!t_svg.empty())
          write_text(t_svg, lb::bench::boxplot_svg(groups, "mean episodic return by agent"));
      }
      if (!t_curve.empty()) {
        long horizon = 0;
        for (const auto& r : recs) horizon = std::max(horizon, r.header.total_steps);
        if (t_bins <= 0) throw CliError("--bins must be positive");
        const long bin_steps = std::max<long>(1, (horizon + t_bins - 1) / t_bins);
        write_text(t_curve, lb::bench::curve_csv(lb::bench::learning_curve(recs, bin_steps)));
      }
      if (!t_files_b.empty()) {
        const std::vector<double> a = mean_returns_sorted_by_name(t_files);
        const std::vector<double> b = mean_returns_sorted_by_name(t_files_b);
        const lb::bench::CorrelationResult corr = lb::bench::cross_task_correlation(a, b);
        write_text(t_corr, lb::bench::correlation_csv("set_a", "set_b", corr));
      }
      return kExitOk;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
