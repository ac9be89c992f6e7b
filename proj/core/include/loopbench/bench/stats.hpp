#pragma once

#include <span>
#include <vector>

namespace loopbench::bench {

// Five-number box-plot summary with Tukey's 1.5*IQR whisker rule.
struct SummaryStats {
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;   // smallest value >= q1 - 1.5*IQR
  double whisker_high = 0.0;  // largest  value <= q3 + 1.5*IQR
  std::vector<double> outliers;  // sorted ascending, beyond the whiskers
  double mean = 0.0;
  int n = 0;
};

// Quantile of a sorted sample by linear interpolation between order
// statistics: h = (n-1)p, value = x[floor(h)] + frac(h)*(x[floor(h)+1]-x[floor(h)]).
double quantile_sorted(std::span<const double> sorted_values, double p);

// Requires at least 4 values; throws std::invalid_argument otherwise.
SummaryStats tukey_summary(std::span<const double> values);

struct CorrelationResult {
  double pearson_r = 0.0;
  double pearson_p = 1.0;  // two-sided t-test, n-2 degrees of freedom
  double spearman_r = 0.0;
  double spearman_p = 1.0;
  int n = 0;
};

// Paired correlation between per-configuration scores on two tasks.
// Requires equal lengths and n >= 3; throws std::invalid_argument otherwise,
// and when either input has zero variance (correlation undefined).
CorrelationResult cross_task_correlation(std::span<const double> returns_a,
                                         std::span<const double> returns_b);

// Midrank vector (ties get the average of the ranks they straddle), 1-based.
std::vector<double> midranks(std::span<const double> values);

}  // namespace loopbench::bench
