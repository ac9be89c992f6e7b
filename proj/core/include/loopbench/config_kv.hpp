#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loopbench {

// Human-readable "key = value" configuration files. One pair per line,
// '#' starts a comment, insertion order is preserved on save. Dotted keys
// (e.g. "create2.wheel_base") namespace device and run parameters.
class KvFile {
 public:
  static KvFile parse(const std::string& text);
  static KvFile load(const std::filesystem::path& path);

  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  bool has(const std::string& key) const;
  std::vector<std::string> keys() const;

  const std::string& get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key) const;
  long long get_int(const std::string& key, long long fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;

  void set_string(const std::string& key, const std::string& value);
  void set_double(const std::string& key, double value);
  void set_int(const std::string& key, long long value);
  void set_bool(const std::string& key, bool value);

 private:
  std::optional<std::size_t> find(const std::string& key) const;
  std::vector<std::pair<std::string, std::string>> entries_;
};

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace loopbench
