#include "loopbench/bench/repeatability.hpp"

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace loopbench::bench {

namespace {

std::string serialized(const RunRecord& r) {
  std::ostringstream out;
  RunRecordWriter w(out, r.header);
  for (const EpisodeEntry& e : r.episodes) w.episode(e);
  if (r.has_summary) w.finish(r.summary);
  return out.str();
}

bool same_bits(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

RepeatReport compare_records(const std::vector<RunRecord>& records) {
  if (records.size() < 2) throw std::invalid_argument("comparison needs at least 2 records");
  const int copies = static_cast<int>(records.size());

  RepeatReport rep;
  rep.copies = copies;
  for (const RunRecord& r : records) {
    std::vector<double> rets;
    rets.reserve(r.episodes.size());
    for (const EpisodeEntry& e : r.episodes) rets.push_back(e.episode_return);
    rep.returns.push_back(std::move(rets));
  }

  const std::string base = serialized(records.front());
  rep.identical = true;
  for (int c = 1; c < copies && rep.identical; ++c) {
    if (serialized(records[c]) == base) continue;
    rep.identical = false;
    rep.divergent_run = c;
    const auto& a = rep.returns[0];
    const auto& b = rep.returns[c];
    const std::size_t common = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < common; ++i) {
      if (!same_bits(a[i], b[i])) {
        rep.divergent_episode = static_cast<int>(i);
        rep.divergent_step = records[0].episodes[i].end_step;
        break;
      }
    }
    if (rep.divergent_episode < 0) {
      // Returns agree on the common prefix: length or metadata differs.
      rep.divergent_episode = static_cast<int>(common);
      rep.divergent_step = common < records[0].episodes.size()
                               ? records[0].episodes[common].end_step
                               : records[0].header.total_steps;
    }
  }

  std::ostringstream detail;
  if (rep.identical) {
    detail << copies << " copies byte-identical, " << rep.returns.front().size()
           << " episodes each";
  } else {
    detail << "copy " << rep.divergent_run << " diverges from copy 0 at episode "
           << rep.divergent_episode << " (end step " << rep.divergent_step << ")";
  }
  rep.detail = detail.str();
  return rep;
}

RepeatReport repeatability_experiment(const RunPlan& plan, int copies) {
  if (plan.clock != ClockMode::Virtual)
    throw std::invalid_argument("repeatability experiment requires the virtual clock");
  if (copies < 2) throw std::invalid_argument("repeatability experiment needs at least 2 copies");

  std::vector<RunRecord> records;
  records.reserve(copies);
  for (int c = 0; c < copies; ++c) records.push_back(execute_run(plan).record);
  return compare_records(records);
}

}  // namespace loopbench::bench
