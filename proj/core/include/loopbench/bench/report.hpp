#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopbench/bench/curve.hpp"
#include "loopbench/bench/run_record.hpp"
#include "loopbench/bench/stats.hpp"

namespace loopbench::bench {

// Deterministic text reports: the same inputs always produce the same bytes,
// so re-running a report over unchanged logs is idempotent.

// One row per run: task, agent, seed, seed_net, total_steps, episodes,
// mean_return.
std::string summary_csv(const std::vector<RunRecord>& runs);

// One row per labelled group of scores (label, n, mean, q1, median, q3,
// whisker_low, whisker_high, outliers separated by ';').
std::string group_stats_csv(
    const std::vector<std::pair<std::string, SummaryStats>>& groups);

// One row per bin: bin_end, mean, stderr, carried.
std::string curve_csv(const LearningCurve& curve);

// Single data row with both correlation flavors and their p-values.
std::string correlation_csv(const std::string& label_a, const std::string& label_b,
                            const CorrelationResult& corr);

// Minimal standalone SVG box plot, one box per labelled group.
std::string boxplot_svg(const std::vector<std::pair<std::string, SummaryStats>>& groups,
                        const std::string& title);

}  // namespace loopbench::bench
