#include "loopbench/bench/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopbench::bench {

LearningCurve learning_curve(const std::vector<RunRecord>& runs, long bin_steps) {
  if (runs.size() < 2) throw std::invalid_argument("learning_curve needs at least 2 runs");
  if (bin_steps <= 0) throw std::invalid_argument("learning_curve needs a positive bin width");
  for (const RunRecord& r : runs)
    if (r.header.task != runs.front().header.task)
      throw std::invalid_argument("learning_curve runs must share one task");

  long horizon = 0;
  for (const RunRecord& r : runs) {
    horizon = std::max(horizon, r.header.total_steps);
    for (const EpisodeEntry& e : r.episodes) horizon = std::max(horizon, e.end_step);
  }
  const std::size_t bins = static_cast<std::size_t>((horizon + bin_steps - 1) / bin_steps);
  if (bins == 0) throw std::invalid_argument("learning_curve found no steps to bin");

  // Per run: mean episode return per bin, empty bins filled by carry.
  std::vector<std::vector<double>> value(runs.size(), std::vector<double>(bins, 0.0));
  std::vector<std::vector<std::uint8_t>> filled(runs.size(),
                                                std::vector<std::uint8_t>(bins, 0));
  LearningCurve out;
  out.bin_steps = bin_steps;
  out.bin_end.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) out.bin_end[b] = static_cast<long>(b + 1) * bin_steps;
  out.carried.assign(bins, 0);

  for (std::size_t r = 0; r < runs.size(); ++r) {
    std::vector<double> sum(bins, 0.0);
    std::vector<int> count(bins, 0);
    for (const EpisodeEntry& e : runs[r].episodes) {
      if (e.end_step <= 0) continue;
      const std::size_t b = static_cast<std::size_t>((e.end_step - 1) / bin_steps);
      if (b >= bins) continue;
      sum[b] += e.episode_return;
      ++count[b];
    }
    bool any = false;
    for (std::size_t b = 0; b < bins; ++b) {
      if (count[b] > 0) {
        value[r][b] = sum[b] / count[b];
        filled[r][b] = 1;
        any = true;
      }
    }
    if (!any) throw std::invalid_argument("learning_curve run has no finished episodes");
    // Forward carry, then borrow the first value for leading gaps.
    double carry = 0.0;
    bool have = false;
    for (std::size_t b = 0; b < bins; ++b) {
      if (filled[r][b]) {
        carry = value[r][b];
        have = true;
      } else if (have) {
        value[r][b] = carry;
        out.carried[b] = 1;
      }
    }
    // Leading gaps: backfill from the first filled bin.
    std::size_t first = 0;
    while (first < bins && !filled[r][first]) ++first;
    for (std::size_t b = 0; b < first; ++b) {
      value[r][b] = value[r][first];
      out.carried[b] = 1;
    }
  }

  out.mean.resize(bins);
  out.stderr_.resize(bins);
  const double nruns = static_cast<double>(runs.size());
  for (std::size_t b = 0; b < bins; ++b) {
    double m = 0.0;
    for (std::size_t r = 0; r < runs.size(); ++r) m += value[r][b];
    m /= nruns;
    double var = 0.0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const double d = value[r][b] - m;
      var += d * d;
    }
    var /= (nruns - 1.0);  // sample variance across runs
    out.mean[b] = m;
    out.stderr_[b] = std::sqrt(var / nruns);
  }
  return out;
}

}  // namespace loopbench::bench
