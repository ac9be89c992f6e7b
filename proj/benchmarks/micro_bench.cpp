// Microbenchmarks for the hot paths: device ticks, reward assembly, advantage
// estimation, network passes, and the curvature product used by the
// trust-region update.

#include <benchmark/benchmark.h>

#include <vector>

#include "loopbench/rl/gae.hpp"
#include "loopbench/rl/gaussian_policy.hpp"
#include "loopbench/rl/mlp.hpp"
#include "loopbench/rng.hpp"
#include "loopbench/scripted/scripted.hpp"
#include "loopbench/sim/create2.hpp"
#include "loopbench/sim/dxl.hpp"
#include "loopbench/sim/ur5.hpp"
#include "loopbench/tasks/env.hpp"
#include "loopbench/tasks/rewards.hpp"

namespace {

using namespace loopbench;

void BM_Ur5Step(benchmark::State& state) {
  sim::Ur5Params p;
  sim::Ur5State s;
  const std::vector<double> cmd{0.1, -0.2, 0.05, 0.0, 0.1, -0.1};
  for (auto _ : state) {
    sim::ur5_step(s, p, cmd, 0.008);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Ur5Step);

void BM_DxlStep(benchmark::State& state) {
  sim::DxlParams p;
  sim::DxlState s;
  for (auto _ : state) {
    sim::dxl_step(s, p, 60.0, 0.01);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_DxlStep);

void BM_Create2Step(benchmark::State& state) {
  sim::Create2Params p;
  sim::Create2State s;
  for (auto _ : state) {
    auto pkt = sim::create2_step(s, p, 120.0, 80.0, 0.015);
    benchmark::DoNotOptimize(pkt);
  }
}
BENCHMARK(BM_Create2Step);

void BM_DockerReward(benchmark::State& state) {
  sim::Create2Params p;
  sim::Create2State s;
  std::vector<sim::Create2Packet> history;
  for (int i = 0; i < 20; ++i) history.push_back(sim::create2_step(s, p, 50.0, 60.0, 0.015));
  for (auto _ : state) {
    auto parts = tasks::docker_reward(history, 3);
    benchmark::DoNotOptimize(parts);
  }
}
BENCHMARK(BM_DockerReward);

void BM_Gae200(benchmark::State& state) {
  Rng rng(7);
  std::vector<double> rewards(200), values(201);
  std::vector<std::uint8_t> dones(200, 0);
  for (auto& r : rewards) r = rng.uniform(-1.0, 1.0);
  for (auto& v : values) v = rng.uniform(-1.0, 1.0);
  dones[99] = 1;
  for (auto _ : state) {
    auto out = rl::compute_gae(rewards, values, dones, 0.99, 0.95);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Gae200);

void BM_MlpForward(benchmark::State& state) {
  Rng rng(3);
  rl::Mlp net({.in = 8, .out = 2, .hidden = 64, .layers = 2}, rng);
  std::vector<double> x{0.1, -0.2, 0.3, 0.0, 0.5, -0.5, 0.2, 0.9};
  std::vector<double> y(2);
  for (auto _ : state) {
    net.forward(x, y);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_MlpForward);

void BM_MlpBackward(benchmark::State& state) {
  Rng rng(3);
  rl::Mlp net({.in = 8, .out = 2, .hidden = 64, .layers = 2}, rng);
  std::vector<double> x{0.1, -0.2, 0.3, 0.0, 0.5, -0.5, 0.2, 0.9};
  std::vector<double> y(2), dy{1.0, -1.0}, dparams(net.n_params());
  rl::Mlp::Cache cache;
  net.forward(x, y, &cache);
  for (auto _ : state) {
    std::fill(dparams.begin(), dparams.end(), 0.0);
    net.backward(cache, dy, dparams);
    benchmark::DoNotOptimize(dparams);
  }
}
BENCHMARK(BM_MlpBackward);

void BM_FisherVectorProduct(benchmark::State& state) {
  Rng rng(11);
  rl::GaussianPolicy pol({.in = 8, .out = 2, .hidden = 64, .layers = 2}, rng);
  const int rows = static_cast<int>(state.range(0));
  std::vector<double> obs(static_cast<std::size_t>(rows) * 8);
  for (auto& v : obs) v = rng.uniform(-1.0, 1.0);
  std::vector<double> v(pol.n_params()), out(pol.n_params());
  for (auto& x : v) x = rng.uniform(-1.0, 1.0);
  for (auto _ : state) {
    pol.fisher_vector_product(obs, rows, v, out);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_FisherVectorProduct)->Arg(256);

void BM_VirtualEpisode(benchmark::State& state) {
  auto env = tasks::make_environment(tasks::TaskId::DxlReacher, ClockMode::Virtual);
  auto agent = scripted::make_scripted_agent("random", env->spec(), {}, 5);
  Rng env_rng(9);
  for (auto _ : state) {
    auto res = tasks::run_episode(*env, *agent, env_rng);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_VirtualEpisode);

}  // namespace

BENCHMARK_MAIN();
