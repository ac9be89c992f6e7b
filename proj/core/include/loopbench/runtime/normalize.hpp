#pragma once

#include <algorithm>
#include <span>
#include <stdexcept>

namespace loopbench {

struct Bounds {
  double lo = -1.0;
  double hi = 1.0;
};

inline void validate(const Bounds& b) {
  if (!(b.hi > b.lo)) throw std::invalid_argument("bounds require hi > lo");
}

// Affine map [lo, hi] -> [-1, 1]. Out-of-range inputs are clamped; callers
// that need to count clamps should test with in_bounds() first.
inline double normalize(double v, const Bounds& b) {
  validate(b);
  v = std::clamp(v, b.lo, b.hi);
  return 2.0 * ((v - b.lo) / (b.hi - b.lo)) - 1.0;
}

// Affine map [-1, 1] -> [lo, hi]; inverse of normalize on the representable
// image of the map.
inline double denormalize(double u, const Bounds& b) {
  validate(b);
  u = std::clamp(u, -1.0, 1.0);
  return b.lo + (u + 1.0) * 0.5 * (b.hi - b.lo);
}

inline bool in_bounds(double v, const Bounds& b) { return v >= b.lo && v <= b.hi; }

inline void normalize(std::span<const double> v, const Bounds& b, std::span<double> out) {
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = normalize(v[i], b);
}

inline void denormalize(std::span<const double> u, const Bounds& b, std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = denormalize(u[i], b);
}

}  // namespace loopbench
