#include "loopbench/search/table_row.hpp"

#include <cstdio>
#include <stdexcept>
#include <vector>

namespace loopbench::search {

namespace {

std::string real2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string real5(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.5f", v);
  return buf;
}

bool power_of_two(long v) { return v > 0 && (v & (v - 1)) == 0; }

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t amp = line.find('&', pos);
    std::string field = line.substr(pos, amp == std::string::npos ? amp : amp - pos);
    const auto first = field.find_first_not_of(" \t");
    const auto last = field.find_last_not_of(" \t\\\r\n");
    out.push_back(first == std::string::npos ? "" : field.substr(first, last - first + 1));
    if (amp == std::string::npos) break;
    pos = amp + 1;
  }
  return out;
}

double parse_real(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("table row: bad ") + what + " value '" + s + "'");
  }
}

long parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("table row: bad ") + what + " value '" + s + "'");
  }
}

}  // namespace

std::string format_table_row(const TableRow& row, long steps) {
  const rl::HyperConfig& c = row.config;
  std::string out = real2(row.episode_return);
  const auto add = [&out](const std::string& f) { out += " & " + f; };
  add(std::to_string(c.batch));
  switch (c.algo) {
    case rl::Algo::Trpo:
      add(real5(c.vf_step_size));
      add(real5(c.kl_delta));
      add(real5(c.gamma_for(steps)));
      add(real5(c.lambda_for(steps)));
      break;
    case rl::Algo::Ppo:
      add(real5(c.step_size));
      add(std::to_string(c.opt_batch));
      add(real5(c.gamma_for(steps)));
      add(real5(c.lambda_for(steps)));
      break;
    case rl::Algo::SoftQ:
      add(real5(c.step_size));
      add(std::to_string(c.epochs));
      add(real5(c.gamma_for(steps)));
      add(real5(c.reward_scale));
      break;
    case rl::Algo::Ddpg:
      add(real5(c.step_size));
      add(real5(c.sigma));
      add(real5(c.gamma_for(steps)));
      add(real5(c.reward_scale));
      break;
  }
  add(std::to_string(c.layers));
  add(std::to_string(c.hidden));
  return out;
}

TableRow parse_table_row(rl::Algo algo, const std::string& line) {
  const auto f = split_fields(line);
  if (f.size() != 8)
    throw std::invalid_argument("table row: expected 8 columns, got " + std::to_string(f.size()));
  TableRow row;
  rl::HyperConfig& c = row.config;
  c.algo = algo;
  row.episode_return = parse_real(f[0], "return");
  c.batch = static_cast<int>(parse_int(f[1], "batch"));
  if (!power_of_two(c.batch)) throw std::invalid_argument("table row: batch must be a power of two");
  switch (algo) {
    case rl::Algo::Trpo:
      c.vf_step_size = parse_real(f[2], "vf-step-size");
      c.kl_delta = parse_real(f[3], "kl radius");
      c.gamma = parse_real(f[4], "gamma");
      c.lambda = parse_real(f[5], "lambda");
      break;
    case rl::Algo::Ppo:
      c.step_size = parse_real(f[2], "step-size");
      c.opt_batch = static_cast<int>(parse_int(f[3], "opt batch"));
      if (!power_of_two(c.opt_batch) || c.opt_batch > c.batch)
        throw std::invalid_argument("table row: opt batch must be a power of two within the batch");
      c.gamma = parse_real(f[4], "gamma");
      c.lambda = parse_real(f[5], "lambda");
      break;
    case rl::Algo::SoftQ:
      c.step_size = parse_real(f[2], "step-size");
      c.epochs = static_cast<int>(parse_int(f[3], "epochs"));
      if (c.epochs < 1) throw std::invalid_argument("table row: epochs must be positive");
      c.gamma = parse_real(f[4], "gamma");
      c.reward_scale = parse_real(f[5], "reward scale");
      break;
    case rl::Algo::Ddpg:
      c.step_size = parse_real(f[2], "step-size");
      c.sigma = parse_real(f[3], "exploration sigma");
      c.gamma = parse_real(f[4], "gamma");
      c.reward_scale = parse_real(f[5], "reward scale");
      break;
  }
  if (!(c.gamma > 0.0 && c.gamma < 1.0)) throw std::invalid_argument("table row: gamma outside (0,1)");
  if ((algo == rl::Algo::Trpo || algo == rl::Algo::Ppo) && !(c.lambda > 0.0 && c.lambda < 1.0))
    throw std::invalid_argument("table row: lambda outside (0,1)");
  if (algo == rl::Algo::SoftQ || algo == rl::Algo::Ddpg) {
    if (!(c.reward_scale > 0.0)) throw std::invalid_argument("table row: reward scale must be positive");
  }
  c.layers = static_cast<int>(parse_int(f[6], "layers"));
  if (c.layers < 1 || c.layers > 8) throw std::invalid_argument("table row: layer count out of range");
  c.hidden = static_cast<int>(parse_int(f[7], "hidden size"));
  if (!power_of_two(c.hidden)) throw std::invalid_argument("table row: hidden size must be a power of two");
  return row;
}

}  // namespace loopbench::search
