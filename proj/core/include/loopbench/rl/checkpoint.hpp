#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace loopbench::rl {

struct NamedArray {
  std::string name;
  std::vector<std::uint64_t> shape;
  std::vector<double> data;  // row-major
};

// Flat binary checkpoint: "LBCK" magic, u32 version, u32 array count, then per
// array a length-prefixed name, u32 rank, u64 dims, and raw f64 data. Field
// order and native little-endian layout are fixed; loaders validate sizes.
void save_checkpoint(const std::filesystem::path& path, std::span<const NamedArray> arrays);
std::vector<NamedArray> load_checkpoint(const std::filesystem::path& path);

}  // namespace loopbench::rl
