#include "loopbench/rl/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace loopbench::rl {

namespace {

constexpr char kMagic[4] = {'L', 'B', 'C', 'K'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ofstream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::ifstream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw std::runtime_error("checkpoint: truncated file");
  return value;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& path, std::span<const NamedArray> arrays) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("checkpoint: cannot open " + path.string() + " for writing");
  out.write(kMagic, sizeof(kMagic));
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(arrays.size()));
  for (const NamedArray& a : arrays) {
    std::uint64_t count = 1;
    for (std::uint64_t d : a.shape) count *= d;
    if (count != a.data.size()) throw std::invalid_argument("checkpoint: shape/data mismatch for " + a.name);
    put(out, static_cast<std::uint32_t>(a.name.size()));
    out.write(a.name.data(), static_cast<std::streamsize>(a.name.size()));
    put(out, static_cast<std::uint32_t>(a.shape.size()));
    for (std::uint64_t d : a.shape) put(out, d);
    out.write(reinterpret_cast<const char*>(a.data.data()),
              static_cast<std::streamsize>(a.data.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("checkpoint: write failed for " + path.string());
}

std::vector<NamedArray> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("checkpoint: cannot open " + path.string());
  char magic[4];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path.string());
  if (get<std::uint32_t>(in) != kVersion) throw std::runtime_error("checkpoint: unsupported version");
  const auto count = get<std::uint32_t>(in);
  std::vector<NamedArray> arrays(count);
  for (NamedArray& a : arrays) {
    const auto name_len = get<std::uint32_t>(in);
    a.name.resize(name_len);
    in.read(a.name.data(), name_len);
    const auto rank = get<std::uint32_t>(in);
    a.shape.resize(rank);
    std::uint64_t total = 1;
    for (auto& d : a.shape) {
      d = get<std::uint64_t>(in);
      total *= d;
    }
    a.data.resize(total);
    in.read(reinterpret_cast<char*>(a.data.data()), static_cast<std::streamsize>(total * sizeof(double)));
    if (!in) throw std::runtime_error("checkpoint: truncated file");
  }
  return arrays;
}

}  // namespace loopbench::rl
