#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "loopbench/config_kv.hpp"

namespace loopbench::bench {

// One experiment run persisted as newline-delimited JSON: a header line,
// one line per finished episode, and a closing summary line. The file is
// self-sufficient: every reported statistic can be recomputed from it.
inline constexpr int kRunRecordVersion = 1;

struct EpisodeEntry {
  int index = 0;          // episode number within the run, starting at 0
  int steps = 0;          // action cycles in this episode
  long end_step = 0;      // cumulative action cycles at episode end
  double episode_return = 0.0;
  double end_time = 0.0;  // clock seconds at episode end (virtual or wall)
  std::string cause;      // why the episode ended
};

struct RunHeader {
  int version = kRunRecordVersion;
  std::string task;
  std::string agent;         // learning algorithm or scripted controller name
  std::string clock;         // "virtual" or "wall"
  std::uint64_t seed = 0;    // run seed; the environment stream derives from it
  std::uint64_t seed_net = 0;  // network-init seed (0 for scripted agents)
  long total_steps = 0;      // step budget of the run
  KvFile config;             // hyper-parameters (empty for scripted agents)
  KvFile devices;            // device parameter snapshot
};

struct RunSummary {
  int episodes = 0;
  double mean_return = 0.0;
  double end_time = 0.0;  // clock seconds consumed by the whole run
  std::uint64_t overruns = 0;
  std::uint64_t obs_clamped = 0;
};

struct RunRecord {
  RunHeader header;
  std::vector<EpisodeEntry> episodes;
  RunSummary summary;
  bool has_summary = false;
};

// Mean of all episodic returns over the run; throws std::invalid_argument
// when the run holds no episodes.
double average_return(const RunRecord& run);

// Single-line JSON forms, no trailing newline. Keys are emitted in sorted
// order so identical records serialize to identical bytes.
std::string header_line(const RunHeader& h);
std::string episode_line(const EpisodeEntry& e);
std::string summary_line(const RunSummary& s);

// Streams records as they happen so a crashed run still leaves a parseable
// prefix. The caller owns the stream.
class RunRecordWriter {
 public:
  RunRecordWriter(std::ostream& out, const RunHeader& h);
  void episode(const EpisodeEntry& e);
  void finish(const RunSummary& s);

 private:
  std::ostream& out_;
};

// Parses a record; throws std::runtime_error on malformed input or an
// unsupported version. A missing summary line is tolerated (interrupted run).
RunRecord parse_run_record(std::istream& in);
RunRecord load_run_record(const std::filesystem::path& path);
void save_run_record(const RunRecord& run, const std::filesystem::path& path);

}  // namespace loopbench::bench
