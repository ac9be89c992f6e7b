// Runtime-layer tests: RNG streams, clocks, cycle arithmetic, bounds
// normalization, lock-free packet ring and action mailbox, key-value config
// files, and binary checkpoints.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "loopbench/config_kv.hpp"
#include "loopbench/rl/checkpoint.hpp"
#include "loopbench/rng.hpp"
#include "loopbench/runtime/clock.hpp"
#include "loopbench/runtime/cycle.hpp"
#include "loopbench/runtime/mailbox.hpp"
#include "loopbench/runtime/normalize.hpp"
#include "loopbench/runtime/packet_ring.hpp"

using namespace loopbench;
namespace fs = std::filesystem;

TEST_CASE("mix_seed decorrelates streams deterministically") {
  CHECK(mix_seed(42, 0) == mix_seed(42, 0));
  CHECK(mix_seed(42, 0) != mix_seed(42, 1));
  CHECK(mix_seed(42, 0) != mix_seed(43, 0));
  // No trivial collisions over a small grid of (seed, stream) pairs.
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 64; ++s)
    for (std::uint64_t k = 0; k < 16; ++k) seen.insert(mix_seed(s, k));
  CHECK(seen.size() == 64 * 16);
}

TEST_CASE("rng sequences are reproducible and seed-sensitive") {
  Rng a(7), b(7), c(8);
  bool same = true, differ = false;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t x = a.raw();
    same = same && (x == b.raw());
    differ = differ || (x != c.raw());
  }
  CHECK(same);
  CHECK(differ);

  Rng d(7), e(7);
  for (int i = 0; i < 50; ++i) CHECK(d.normal() == e.normal());
}

TEST_CASE("uniform01 stays in [0,1) and uniform(lo,hi) in its box") {
  Rng rng(1);
  double mn = 1.0, mx = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    mn = std::min(mn, u);
    mx = std::max(mx, u);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(mn < 0.01);
  CHECK(mx > 0.99);

  Rng r2(3);
  for (int i = 0; i < 10000; ++i) {
    const double v = r2.uniform(-3.0, 5.0);
    REQUIRE(v >= -3.0);
    REQUIRE(v <= 5.0);
  }
}

TEST_CASE("uniform_int is inclusive on both ends") {
  Rng rng(5);
  std::set<int> hits;
  for (int i = 0; i < 2000; ++i) {
    const int v = rng.uniform_int(3, 5);
    REQUIRE(v >= 3);
    REQUIRE(v <= 5);
    hits.insert(v);
  }
  CHECK(hits == std::set<int>{3, 4, 5});
  for (int i = 0; i < 100; ++i) CHECK(rng.uniform_int(2, 2) == 2);
  // Negative spans work too.
  std::set<int> neg;
  for (int i = 0; i < 2000; ++i) neg.insert(rng.uniform_int(-2, 1));
  CHECK(neg == std::set<int>{-2, -1, 0, 1});
}

TEST_CASE("bounded draws are unbiased over small moduli") {
  Rng rng(9);
  const std::uint64_t n = 6;
  std::vector<int> counts(n, 0);
  const int draws = 120000;
  for (int i = 0; i < draws; ++i) {
    const std::uint64_t v = rng.bounded(n);
    REQUIRE(v < n);
    ++counts[static_cast<std::size_t>(v)];
  }
  // Chi-square with 5 dof; 99.9th percentile is about 20.5.
  const double expect = static_cast<double>(draws) / n;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  CHECK(chi2 < 20.5);
}

TEST_CASE("coin is balanced and normal has the right moments") {
  Rng rng(11);
  int heads = 0;
  const int flips = 100000;
  for (int i = 0; i < flips; ++i) heads += rng.coin() ? 1 : 0;
  CHECK(static_cast<double>(heads) / flips == doctest::Approx(0.5).epsilon(0.02));

  double m = 0.0, m2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    m += z;
    m2 += z * z;
  }
  m /= n;
  m2 /= n;
  CHECK(m == doctest::Approx(0.0).epsilon(1.0).scale(0.02));
  CHECK(m2 - m * m == doctest::Approx(1.0).epsilon(0.02));
  CHECK(rng.normal(10.0, 0.0) == 10.0);
}

TEST_CASE("virtual clock advances exactly and wall clock moves forward") {
  Clock vc(ClockMode::Virtual);
  CHECK(vc.now() == 0.0);
  for (int i = 0; i < 4; ++i) vc.advance(0.25);
  CHECK(vc.now() == 1.0);
  CHECK_THROWS_AS(vc.sleep_until(0.0), std::logic_error);

  Clock wc(ClockMode::Wall);
  const double t0 = wc.now();
  CHECK_THROWS_AS(wc.advance(0.1), std::logic_error);
  wc.sleep_until(t0 + 0.01);
  CHECK(wc.now() >= t0 + 0.01);

  CHECK(clock_mode_from_string("virtual") == ClockMode::Virtual);
  CHECK(clock_mode_from_string("wall") == ClockMode::Wall);
  CHECK_THROWS_AS(clock_mode_from_string("cpu"), std::invalid_argument);
  CHECK(std::string(to_string(ClockMode::Virtual)) == "virtual");
  CHECK(std::string(to_string(ClockMode::Wall)) == "wall");
}

TEST_CASE("cycle arithmetic matches the task timing table") {
  // {action cycle, read-write cycle, episode seconds} -> steps, packets.
  struct Row {
    CycleConfig c;
    int steps, packets;
  };
  const Row rows[] = {
      {{0.040, 0.008, 4.0}, 100, 5},   // planar-arm tasks
      {{0.040, 0.010, 2.0}, 50, 4},    // servo reacher
      {{0.040, 0.010, 4.0}, 100, 4},   // servo tracker
      {{0.150, 0.015, 90.0}, 600, 10}, // mobile mover
      {{0.045, 0.015, 30.0}, 666, 3},  // mobile docker
  };
  for (const Row& r : rows) {
    CHECK(r.c.episode_steps() == r.steps);
    CHECK(r.c.packets_per_action() == r.packets);
  }
  CHECK(CycleConfig::whole_quotient(30.0, 0.045) == 666);
  CHECK(CycleConfig::whole_quotient(4.0, 0.04) == 100);
  CHECK_THROWS_AS(CycleConfig::whole_quotient(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(CycleConfig::whole_quotient(-1.0, 0.1), std::invalid_argument);
  CycleConfig bad{0.04, 0.03, 1.0};
  CHECK_THROWS_AS(bad.packets_per_action(), std::invalid_argument);
  CHECK(scale_reward(2.5, 0.04) == doctest::Approx(0.1));
}

TEST_CASE("normalize maps bounds onto [-1,1] with clamping") {
  const Bounds b{-0.3, 0.3};
  CHECK(normalize(-0.3, b) == -1.0);
  CHECK(normalize(0.3, b) == 1.0);
  CHECK(normalize(0.0, b) == doctest::Approx(0.0));
  CHECK(normalize(-5.0, b) == -1.0);
  CHECK(normalize(5.0, b) == 1.0);
  CHECK(denormalize(-1.0, b) == -0.3);
  CHECK(denormalize(1.0, b) == doctest::Approx(0.3));
  CHECK(denormalize(-3.0, b) == -0.3);  // clamped
  CHECK(in_bounds(0.3, b));
  CHECK(!in_bounds(0.30001, b));
  CHECK_THROWS_AS(normalize(0.0, Bounds{1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(denormalize(0.0, Bounds{2.0, -2.0}), std::invalid_argument);

  const std::vector<double> v{-0.3, 0.0, 0.3};
  std::vector<double> out(3), back(3);
  normalize(std::span<const double>(v), b, out);
  denormalize(std::span<const double>(out), b, back);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(v[i]));
}

TEST_CASE("normalize round trip is tight across random bounds") {
  Rng rng(17);
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double lo = rng.uniform(-200.0, 199.0);
    const double hi = lo + rng.uniform(1e-3, 400.0);
    const Bounds b{lo, hi};
    const double v = rng.uniform(lo, hi);
    const double rt = denormalize(normalize(v, b), b);
    worst = std::max(worst, std::abs(rt - v) / (hi - lo));
  }
  // Relative to the span, the round trip is accurate to a few ulps.
  CHECK(worst < 1e-15);
}

namespace {
struct ProbePacket {
  double t = 0.0;
  std::uint64_t v = 0;
  std::uint64_t twice = 0;  // redundancy used to detect torn reads
};
}  // namespace

TEST_CASE("packet ring keeps newest packets in chronological order") {
  PacketRing<ProbePacket> ring(4);
  CHECK(ring.capacity() == 4);
  CHECK(ring.count() == 0);
  CHECK(ring.available() == 0);
  CHECK_THROWS_AS(ring.newest(), std::runtime_error);
  CHECK_THROWS_AS(PacketRing<ProbePacket>(0), std::invalid_argument);

  for (std::uint64_t i = 0; i < 3; ++i) ring.push({0.01 * i, i, 2 * i});
  CHECK(ring.count() == 3);
  CHECK(ring.available() == 3);
  CHECK(ring.newest().v == 2);
  auto two = ring.latest(2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].v == 1);
  CHECK(two[1].v == 2);  // newest last
  CHECK(ring.latest(10).size() == 3);

  for (std::uint64_t i = 3; i < 10; ++i) ring.push({0.01 * i, i, 2 * i});
  CHECK(ring.count() == 10);
  CHECK(ring.available() == 4);
  auto four = ring.latest(4);
  REQUIRE(four.size() == 4);
  for (std::uint64_t k = 0; k < 4; ++k) CHECK(four[k].v == 6 + k);

  ring.clear();
  CHECK(ring.count() == 0);
  CHECK(ring.latest(4).empty());
  CHECK_THROWS_AS(ring.newest(), std::runtime_error);
}

TEST_CASE("packet ring readers never observe torn packets") {
  PacketRing<ProbePacket> ring(8);
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> torn{0}, reads{0};

  std::thread writer([&] {
    std::uint64_t i = 0;
    while (!stop.load(std::memory_order_relaxed)) {
      ring.push({0.0, i, 2 * i});
      ++i;
    }
  });
  std::thread reader([&] {
    while (!stop.load(std::memory_order_relaxed)) {
      if (ring.count() == 0) continue;
      const ProbePacket p = ring.newest();
      if (p.twice != 2 * p.v) torn.fetch_add(1);
      for (const ProbePacket& q : ring.latest(4))
        if (q.twice != 2 * q.v) torn.fetch_add(1);
      reads.fetch_add(1);
    }
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  stop.store(true);
  writer.join();
  reader.join();
  CHECK(torn.load() == 0);
  CHECK(reads.load() > 100);
}

TEST_CASE("mailbox delivers the latest post and counts posts") {
  Mailbox<ActionCmd> box;
  CHECK(box.posts() == 0);
  ActionCmd first = box.read();
  CHECK(first.dim == 0);
  CHECK(first.index == 0);

  ActionCmd cmd;
  cmd.dim = 2;
  cmd.v[0] = 0.5;
  cmd.v[1] = -0.25;
  cmd.index = 1;
  box.post(cmd);
  ActionCmd got = box.read();
  CHECK(got.dim == 2);
  CHECK(got.v[0] == 0.5);
  CHECK(got.v[1] == -0.25);
  CHECK(box.posts() == 1);

  cmd.v[0] = 0.75;
  cmd.index = 2;
  box.post(cmd);
  CHECK(box.read().v[0] == 0.75);
  CHECK(box.posts() == 2);
}

TEST_CASE("mailbox reads stay internally consistent under contention") {
  Mailbox<ProbePacket> box;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> torn{0};
  std::thread writer([&] {
    std::uint64_t i = 1;
    while (!stop.load(std::memory_order_relaxed)) {
      box.post({0.0, i, 2 * i});
      ++i;
    }
  });
  std::thread reader([&] {
    while (!stop.load(std::memory_order_relaxed)) {
      const ProbePacket p = box.read();
      if (p.twice != 2 * p.v) torn.fetch_add(1);
    }
  });
  std::this_thread::sleep_for(std::chrono::milliseconds(200));
  stop.store(true);
  writer.join();
  reader.join();
  CHECK(torn.load() == 0);
}

TEST_CASE("kv files parse comments, trim whitespace, and type-check") {
  const KvFile kv = KvFile::parse(
      "# leading comment\n"
      "\n"
      "  alpha = 3  # trailing comment\n"
      "name=servo reacher\n"
      "rate = 0.25\n"
      "flag = true\n");
  CHECK(kv.get_int("alpha") == 3);
  CHECK(kv.get_string("name") == "servo reacher");
  CHECK(kv.get_double("rate") == 0.25);
  CHECK(kv.get_bool("flag"));
  CHECK(kv.get_bool("other", false) == false);
  CHECK(kv.get_int("missing", 7) == 7);
  CHECK(kv.get_double("missing", 1.5) == 1.5);
  CHECK(kv.get_string("missing", "x") == "x");
  CHECK(kv.has("alpha"));
  CHECK(!kv.has("beta"));

  CHECK_THROWS_AS(kv.get_string("absent"), std::invalid_argument);
  CHECK_THROWS_AS(kv.get_int("name"), std::invalid_argument);
  CHECK_THROWS_AS(kv.get_double("name"), std::invalid_argument);
  CHECK_THROWS_AS(kv.get_bool("alpha"), std::invalid_argument);  // 3 is not a bool
  CHECK_THROWS_AS(KvFile::parse("just words\n"), std::invalid_argument);
  CHECK_THROWS_AS(KvFile::parse("= 3\n"), std::invalid_argument);
  CHECK(KvFile::parse("b = 1\n").get_bool("b"));
  CHECK(!KvFile::parse("b = 0\n").get_bool("b"));
}

TEST_CASE("kv round trip preserves order and exact numeric values") {
  KvFile kv;
  kv.set_string("zeta", "last first");
  kv.set_int("count", -42);
  kv.set_double("pi", 3.141592653589793);
  kv.set_double("tiny", 1e-300);
  kv.set_double("third", 1.0 / 3.0);
  kv.set_bool("on", true);
  kv.set_int("count", -43);  // overwrite keeps position

  const KvFile back = KvFile::parse(kv.serialize());
  CHECK(back.keys() == kv.keys());
  CHECK(back.keys().front() == "zeta");  // insertion order kept
  CHECK(back.get_int("count") == -43);
  CHECK(back.get_double("pi") == 3.141592653589793);
  CHECK(back.get_double("tiny") == 1e-300);
  CHECK(back.get_double("third") == 1.0 / 3.0);
  CHECK(back.get_bool("on"));

  const fs::path p = fs::temp_directory_path() / "loopbench_kv_test.kv";
  kv.save(p);
  const KvFile loaded = KvFile::load(p);
  CHECK(loaded.serialize() == kv.serialize());
  fs::remove(p);
  CHECK_THROWS_AS(KvFile::load("/nonexistent/config.kv"), std::invalid_argument);
}

TEST_CASE("format_double emits shortest exact representations") {
  for (double v : {0.1, 1.0 / 3.0, 3.141592653589793, 1e-20, -2.5e17, 0.0, -0.0, 1.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.25) == "0.25");
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("checkpoints round-trip named arrays bit-exactly") {
  using rl::NamedArray;
  std::vector<NamedArray> arrays;
  arrays.push_back({"policy.mean", {3, 4}, std::vector<double>(12)});
  for (int i = 0; i < 12; ++i) arrays[0].data[static_cast<std::size_t>(i)] = 0.1 * i - 0.55;
  arrays.push_back({"value", {5}, {1e-300, -0.0, 3.25, 1.0 / 3.0, 7e200}});
  arrays.push_back({"empty", {0}, {}});

  const fs::path p = fs::temp_directory_path() / "loopbench_ckpt_test.bin";
  rl::save_checkpoint(p, arrays);
  const std::vector<NamedArray> back = rl::load_checkpoint(p);
  REQUIRE(back.size() == arrays.size());
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    CHECK(back[i].name == arrays[i].name);
    CHECK(back[i].shape == arrays[i].shape);
    REQUIRE(back[i].data.size() == arrays[i].data.size());
    for (std::size_t j = 0; j < arrays[i].data.size(); ++j)
      CHECK(std::bit_cast<std::uint64_t>(back[i].data[j]) ==
            std::bit_cast<std::uint64_t>(arrays[i].data[j]));
  }
  fs::remove(p);

  // Shape/data mismatch is rejected before writing.
  std::vector<NamedArray> bad;
  bad.push_back({"x", {2, 2}, {1.0, 2.0, 3.0}});
  CHECK_THROWS_AS(rl::save_checkpoint(p, bad), std::invalid_argument);

  CHECK_THROWS_AS(rl::load_checkpoint("/nonexistent/ckpt.bin"), std::runtime_error);
  const fs::path junk = fs::temp_directory_path() / "loopbench_ckpt_junk.bin";
  {
    std::ofstream out(junk, std::ios::binary);
    out << "not a checkpoint at all";
  }
  CHECK_THROWS_AS(rl::load_checkpoint(junk), std::runtime_error);
  fs::remove(junk);
}
