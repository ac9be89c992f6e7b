#include "loopbench/bench/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace loopbench::bench {

double quantile_sorted(std::span<const double> sorted_values, double p) {
  if (sorted_values.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile fraction outside [0,1]");
  const std::size_t n = sorted_values.size();
  const double h = static_cast<double>(n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  const double frac = h - static_cast<double>(lo);
  return sorted_values[lo] + frac * (sorted_values[hi] - sorted_values[lo]);
}

SummaryStats tukey_summary(std::span<const double> values) {
  if (values.size() < 4) throw std::invalid_argument("tukey_summary needs at least 4 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  SummaryStats s;
  s.n = static_cast<int>(sorted.size());
  s.q1 = quantile_sorted(sorted, 0.25);
  s.median = quantile_sorted(sorted, 0.50);
  s.q3 = quantile_sorted(sorted, 0.75);
  s.mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(sorted.size());

  const double iqr = s.q3 - s.q1;
  const double fence_low = s.q1 - 1.5 * iqr;
  const double fence_high = s.q3 + 1.5 * iqr;
  s.whisker_low = s.q3;
  s.whisker_high = s.q1;
  bool any_inside = false;
  for (double v : sorted) {
    if (v < fence_low || v > fence_high) {
      s.outliers.push_back(v);
    } else {
      if (!any_inside || v < s.whisker_low) s.whisker_low = v;
      if (!any_inside || v > s.whisker_high) s.whisker_high = v;
      any_inside = true;
    }
  }
  if (!any_inside) {  // cannot happen: the median is always inside the fences
    s.whisker_low = s.median;
    s.whisker_high = s.median;
  }
  return s;
}

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;  // 1-based midrank
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

namespace {

double pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - ma;
    const double db = b[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    throw std::invalid_argument("correlation undefined for constant input");
  return sab / std::sqrt(saa * sbb);
}

// Two-sided p-value of r under the null, via t = r*sqrt((n-2)/(1-r^2)).
double two_sided_p(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  const double denom = 1.0 - r * r;
  if (denom <= 0.0) return 0.0;  // |r| = 1: t diverges
  const double t = r * std::sqrt(df / denom);
  boost::math::students_t dist(df);
  return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

}  // namespace

CorrelationResult cross_task_correlation(std::span<const double> returns_a,
                                         std::span<const double> returns_b) {
  if (returns_a.size() != returns_b.size())
    throw std::invalid_argument("cross_task_correlation needs equal-length inputs");
  if (returns_a.size() < 3)
    throw std::invalid_argument("cross_task_correlation needs at least 3 pairs");

  CorrelationResult out;
  out.n = static_cast<int>(returns_a.size());
  out.pearson_r = pearson(returns_a, returns_b);
  out.pearson_p = two_sided_p(out.pearson_r, returns_a.size());

  const std::vector<double> ra = midranks(returns_a);
  const std::vector<double> rb = midranks(returns_b);
  out.spearman_r = pearson(ra, rb);
  out.spearman_p = two_sided_p(out.spearman_r, returns_a.size());
  return out;
}

}  // namespace loopbench::bench
