#pragma once

#include <cmath>

namespace pathcast {

/// 2-D point in pixel coordinates.
struct PixelPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

inline PixelPoint operator+(PixelPoint a, PixelPoint b) { return {a.x + b.x, a.y + b.y}; }
inline PixelPoint operator-(PixelPoint a, PixelPoint b) { return {a.x - b.x, a.y - b.y}; }
inline PixelPoint operator*(PixelPoint a, double s) { return {a.x * s, a.y * s}; }

inline double squared_distance(PixelPoint a, PixelPoint b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(PixelPoint a, PixelPoint b) {
  return std::sqrt(squared_distance(a, b));
}

inline bool is_finite(PixelPoint p) {
  return std::isfinite(p.x) && std::isfinite(p.y);
}

inline PixelPoint lerp(PixelPoint a, PixelPoint b, double t) {
  return {a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t};
}

}  // namespace pathcast
