#include "loopbench/bench/run_record.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace loopbench::bench {

namespace {

using nlohmann::json;

json kv_to_json(const KvFile& kv) {
  json obj = json::object();
  for (const std::string& key : kv.keys()) obj[key] = kv.get_string(key);
  return obj;
}

KvFile kv_from_json(const json& obj) {
  KvFile kv;
  for (auto it = obj.begin(); it != obj.end(); ++it)
    kv.set_string(it.key(), it.value().get<std::string>());
  return kv;
}

json parse_line(const std::string& line, int number) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw std::runtime_error("run record line " + std::to_string(number) + " is not a JSON object");
  return j;
}

}  // namespace

double average_return(const RunRecord& run) {
  if (run.episodes.empty())
    throw std::invalid_argument("average_return of a run with no episodes");
  double sum = 0.0;
  for (const EpisodeEntry& e : run.episodes) sum += e.episode_return;
  return sum / static_cast<double>(run.episodes.size());
}

std::string header_line(const RunHeader& h) {
  json j;
  j["type"] = "header";
  j["version"] = h.version;
  j["task"] = h.task;
  j["agent"] = h.agent;
  j["clock"] = h.clock;
  j["seed"] = h.seed;
  j["seed_net"] = h.seed_net;
  j["total_steps"] = h.total_steps;
  j["config"] = kv_to_json(h.config);
  j["devices"] = kv_to_json(h.devices);
  return j.dump();
}

std::string episode_line(const EpisodeEntry& e) {
  json j;
  j["type"] = "episode";
  j["index"] = e.index;
  j["steps"] = e.steps;
  j["end_step"] = e.end_step;
  j["return"] = e.episode_return;
  j["end_time"] = e.end_time;
  j["cause"] = e.cause;
  return j.dump();
}

std::string summary_line(const RunSummary& s) {
  json j;
  j["type"] = "summary";
  j["episodes"] = s.episodes;
  j["mean_return"] = s.mean_return;
  j["end_time"] = s.end_time;
  j["overruns"] = s.overruns;
  j["obs_clamped"] = s.obs_clamped;
  return j.dump();
}

RunRecordWriter::RunRecordWriter(std::ostream& out, const RunHeader& h) : out_(out) {
  out_ << header_line(h) << '\n';
  out_.flush();
}

void RunRecordWriter::episode(const EpisodeEntry& e) {
  out_ << episode_line(e) << '\n';
  out_.flush();
}

void RunRecordWriter::finish(const RunSummary& s) {
  out_ << summary_line(s) << '\n';
  out_.flush();
}

RunRecord parse_run_record(std::istream& in) {
  RunRecord run;
  bool saw_header = false;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const json j = parse_line(line, number);
    const std::string type = j.value("type", "");
    if (type == "header") {
      if (saw_header) throw std::runtime_error("run record has two header lines");
      saw_header = true;
      RunHeader& h = run.header;
      h.version = j.at("version").get<int>();
      if (h.version != kRunRecordVersion)
        throw std::runtime_error("unsupported run record version " + std::to_string(h.version));
      h.task = j.at("task").get<std::string>();
      h.agent = j.at("agent").get<std::string>();
      h.clock = j.at("clock").get<std::string>();
      h.seed = j.at("seed").get<std::uint64_t>();
      h.seed_net = j.at("seed_net").get<std::uint64_t>();
      h.total_steps = j.at("total_steps").get<long>();
      h.config = kv_from_json(j.at("config"));
      h.devices = kv_from_json(j.at("devices"));
    } else if (type == "episode") {
      if (!saw_header) throw std::runtime_error("episode line before header");
      EpisodeEntry e;
      e.index = j.at("index").get<int>();
      e.steps = j.at("steps").get<int>();
      e.end_step = j.at("end_step").get<long>();
      e.episode_return = j.at("return").get<double>();
      e.end_time = j.at("end_time").get<double>();
      e.cause = j.at("cause").get<std::string>();
      run.episodes.push_back(std::move(e));
    } else if (type == "summary") {
      if (!saw_header) throw std::runtime_error("summary line before header");
      RunSummary& s = run.summary;
      s.episodes = j.at("episodes").get<int>();
      s.mean_return = j.at("mean_return").get<double>();
      s.end_time = j.at("end_time").get<double>();
      s.overruns = j.at("overruns").get<std::uint64_t>();
      s.obs_clamped = j.at("obs_clamped").get<std::uint64_t>();
      run.has_summary = true;
    } else {
      throw std::runtime_error("run record line " + std::to_string(number) +
                               " has unknown type '" + type + "'");
    }
  }
  if (!saw_header) throw std::runtime_error("run record has no header line");
  return run;
}

RunRecord load_run_record(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open run record " + path.string());
  return parse_run_record(in);
}

void save_run_record(const RunRecord& run, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write run record " + path.string());
  RunRecordWriter w(out, run.header);
  for (const EpisodeEntry& e : run.episodes) w.episode(e);
  if (run.has_summary) w.finish(run.summary);
}

}  // namespace loopbench::bench
