#include "loopbench/bench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "loopbench/config_kv.hpp"

namespace loopbench::bench {

namespace {

std::string num(double v) { return format_double(v); }

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string summary_csv(const std::vector<RunRecord>& runs) {
  std::ostringstream out;
  out << "task,agent,seed,seed_net,total_steps,episodes,mean_return\n";
  for (const RunRecord& r : runs) {
    out << r.header.task << ',' << r.header.agent << ',' << r.header.seed << ','
        << r.header.seed_net << ',' << r.header.total_steps << ',' << r.episodes.size() << ','
        << num(average_return(r)) << '\n';
  }
  return out.str();
}

std::string group_stats_csv(
    const std::vector<std::pair<std::string, SummaryStats>>& groups) {
  std::ostringstream out;
  out << "label,n,mean,q1,median,q3,whisker_low,whisker_high,outliers\n";
  for (const auto& [label, s] : groups) {
    out << label << ',' << s.n << ',' << num(s.mean) << ',' << num(s.q1) << ',' << num(s.median)
        << ',' << num(s.q3) << ',' << num(s.whisker_low) << ',' << num(s.whisker_high) << ',';
    for (std::size_t i = 0; i < s.outliers.size(); ++i) {
      if (i) out << ';';
      out << num(s.outliers[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string curve_csv(const LearningCurve& curve) {
  std::ostringstream out;
  out << "bin_end,mean,stderr,carried\n";
  for (std::size_t b = 0; b < curve.mean.size(); ++b) {
    out << curve.bin_end[b] << ',' << num(curve.mean[b]) << ',' << num(curve.stderr_[b]) << ','
        << int(curve.carried[b]) << '\n';
  }
  return out.str();
}

std::string correlation_csv(const std::string& label_a, const std::string& label_b,
                            const CorrelationResult& corr) {
  std::ostringstream out;
  out << "a,b,n,pearson_r,pearson_p,spearman_r,spearman_p\n";
  out << label_a << ',' << label_b << ',' << corr.n << ',' << num(corr.pearson_r) << ','
      << num(corr.pearson_p) << ',' << num(corr.spearman_r) << ',' << num(corr.spearman_p)
      << '\n';
  return out.str();
}

std::string boxplot_svg(const std::vector<std::pair<std::string, SummaryStats>>& groups,
                        const std::string& title) {
  if (groups.empty()) throw std::invalid_argument("boxplot_svg needs at least one group");
  double lo = groups.front().second.whisker_low;
  double hi = groups.front().second.whisker_high;
  for (const auto& [label, s] : groups) {
    lo = std::min(lo, s.whisker_low);
    hi = std::max(hi, s.whisker_high);
    for (double o : s.outliers) {
      lo = std::min(lo, o);
      hi = std::max(hi, o);
    }
  }
  if (hi <= lo) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;

  const int slot = 90;        // horizontal room per box
  const int left = 70;        // axis margin
  const int top = 40;
  const int plot_h = 320;
  const int width = left + slot * static_cast<int>(groups.size()) + 20;
  const int height = top + plot_h + 50;
  const auto y = [&](double v) {
    return static_cast<double>(top) + (hi - v) / (hi - lo) * plot_h;
  };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<style>text{font-family:sans-serif;font-size:12px;}</style>\n";
  out << "<text x=\"" << left << "\" y=\"20\">" << title << "</text>\n";
  // Axis with min/max labels.
  out << "<line x1=\"" << left - 10 << "\" y1=\"" << top << "\" x2=\"" << left - 10 << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<text x=\"4\" y=\"" << fixed2(y(hi) + 4) << "\">" << fixed2(hi) << "</text>\n";
  out << "<text x=\"4\" y=\"" << fixed2(y(lo) + 4) << "\">" << fixed2(lo) << "</text>\n";

  int idx = 0;
  for (const auto& [label, s] : groups) {
    const double cx = left + slot * idx + slot * 0.5;
    const double half = slot * 0.28;
    // Whisker stems and caps.
    out << "<line x1=\"" << fixed2(cx) << "\" y1=\"" << fixed2(y(s.whisker_low)) << "\" x2=\""
        << fixed2(cx) << "\" y2=\"" << fixed2(y(s.q1)) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fixed2(cx) << "\" y1=\"" << fixed2(y(s.q3)) << "\" x2=\""
        << fixed2(cx) << "\" y2=\"" << fixed2(y(s.whisker_high)) << "\" stroke=\"black\"/>\n";
    for (double w : {s.whisker_low, s.whisker_high})
      out << "<line x1=\"" << fixed2(cx - half * 0.6) << "\" y1=\"" << fixed2(y(w)) << "\" x2=\""
          << fixed2(cx + half * 0.6) << "\" y2=\"" << fixed2(y(w)) << "\" stroke=\"black\"/>\n";
    // Box and median.
    out << "<rect x=\"" << fixed2(cx - half) << "\" y=\"" << fixed2(y(s.q3)) << "\" width=\""
        << fixed2(2 * half) << "\" height=\"" << fixed2(y(s.q1) - y(s.q3))
        << "\" fill=\"#cfe2f3\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << fixed2(cx - half) << "\" y1=\"" << fixed2(y(s.median)) << "\" x2=\""
        << fixed2(cx + half) << "\" y2=\"" << fixed2(y(s.median))
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (double o : s.outliers)
      out << "<circle cx=\"" << fixed2(cx) << "\" cy=\"" << fixed2(y(o))
          << "\" r=\"3\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fixed2(cx - half) << "\" y=\"" << top + plot_h + 20 << "\">" << label
        << "</text>\n";
    ++idx;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace loopbench::bench
