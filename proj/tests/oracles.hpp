#pragma once

// Test-only reference computations. Kept independent of the library code paths
// they are used to check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "ringbot/geometry.hpp"

namespace oracle {

inline double shoelace(const std::vector<ringbot::geometry::Point>& pts) {
  double twice = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

/// Composite Simpson rule, n even.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace oracle
