#include "loopbench/config_kv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace loopbench {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  // Shortest representation that round-trips through binary64.
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) return buf;
  }
  return buf;
}

KvFile KvFile::parse(const std::string& text) {
  KvFile kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    kv.set_string(key, value);
  }
  return kv;
}

KvFile KvFile::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
  std::ostringstream body;
  body << in.rdbuf();
  return parse(body.str());
}

std::string KvFile::serialize() const {
  std::ostringstream out;
  for (const auto& [k, v] : entries_) out << k << " = " << v << "\n";
  return out.str();
}

void KvFile::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path.string());
  out << serialize();
}

std::optional<std::size_t> KvFile::find(const std::string& key) const {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (entries_[i].first == key) return i;
  return std::nullopt;
}

bool KvFile::has(const std::string& key) const { return find(key).has_value(); }

std::vector<std::string> KvFile::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(k);
  return out;
}

const std::string& KvFile::get_string(const std::string& key) const {
  const auto i = find(key);
  if (!i) throw std::invalid_argument("missing config key: " + key);
  return entries_[*i].second;
}

std::string KvFile::get_string(const std::string& key, const std::string& fallback) const {
  const auto i = find(key);
  return i ? entries_[*i].second : fallback;
}

double KvFile::get_double(const std::string& key) const {
  const std::string& s = get_string(key);
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw std::invalid_argument("config key " + key + ": not a number: " + s);
  }
}

double KvFile::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long long KvFile::get_int(const std::string& key) const {
  const std::string& s = get_string(key);
  long long v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw std::invalid_argument("config key " + key + ": not an integer: " + s);
  return v;
}

long long KvFile::get_int(const std::string& key, long long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

bool KvFile::get_bool(const std::string& key) const {
  const std::string& s = get_string(key);
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("config key " + key + ": not a bool: " + s);
}

bool KvFile::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}

void KvFile::set_string(const std::string& key, const std::string& value) {
  if (auto i = find(key)) {
    entries_[*i].second = value;
  } else {
    entries_.emplace_back(key, value);
  }
}

void KvFile::set_double(const std::string& key, double value) { set_string(key, format_double(value)); }
void KvFile::set_int(const std::string& key, long long value) { set_string(key, std::to_string(value)); }
void KvFile::set_bool(const std::string& key, bool value) { set_string(key, value ? "true" : "false"); }

}  // namespace loopbench
