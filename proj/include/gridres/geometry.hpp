#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gridres {

// Planar projected coordinates in meters. No lat/lon inside the engine.
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct Rect {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool operator==(const Rect&) const = default;
};

inline double overlap_area(const Rect& a, const Rect& b) {
  const double w = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  return (w > 0.0 && h > 0.0) ? w * h : 0.0;
}

inline double dist(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

inline Point midpoint(Point a, Point b) {
  return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
}

inline double point_segment_distance(Point p, Point a, Point b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  if (len2 == 0.0) return dist(p, a);
  double t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return dist(p, {a.x + t * dx, a.y + t * dy});
}

inline double point_polyline_distance(Point p, const std::vector<Point>& poly) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < poly.size(); ++i) {
    best = std::min(best, point_segment_distance(p, poly[i - 1], poly[i]));
  }
  if (poly.size() == 1) best = dist(p, poly[0]);
  return best;
}

inline double polyline_length(const std::vector<Point>& poly) {
  double total = 0.0;
  for (std::size_t i = 1; i < poly.size(); ++i) total += dist(poly[i - 1], poly[i]);
  return total;
}

// Even-odd ray casting. Points on the boundary count as inside.
inline bool point_in_polygon(Point p, const std::vector<Point>& polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return false;
  constexpr double kEdgeEps = 1e-9;
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, polygon[i], polygon[(i + 1) % n]) <= kEdgeEps) {
      return true;
    }
  }
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = polygon[j];
    const Point& b = polygon[i];
    if ((b.y > p.y) != (a.y > p.y)) {
      const double x_int = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}


}  // namespace gridres
