#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace covgrid {

// Coincidence tolerance for all geometric predicates, in meters.
inline constexpr double kGeomEps = 1e-9;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double distance(const Point& a, const Point& b);

// Simple polygon stored counter-clockwise. Construction validates the input
// and reverses clockwise rings; an invalid ring throws DegeneratePolygon.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const Point& operator[](std::size_t i) const { return vertices_[i]; }
  // Edge i runs from vertex i to vertex (i + 1) mod size.
  Point edge_start(std::size_t i) const { return vertices_[i]; }
  Point edge_end(std::size_t i) const {
    return vertices_[(i + 1) % vertices_.size()];
  }

 private:
  std::vector<Point> vertices_;
};

// Validates a ring and returns it counter-clockwise. Consecutive duplicates
// (including an explicit closing vertex) are collapsed first.
Polygon validate_and_orient(std::vector<Point> vertices);

double polygon_area(const Polygon& p);

bool is_convex(const Polygon& p);

std::size_t longest_edge(const Polygon& p);

struct Bounds {
  double min_x, min_y, max_x, max_y;
};
Bounds bounds(std::span<const Point> pts);

// Rigid motion p -> R(angle) p + translation. `angle` is counter-clockwise
// in radians.
class AffineTransform {
 public:
  AffineTransform() = default;
  AffineTransform(double angle, Point translation);

  static AffineTransform identity() { return {}; }

  double angle() const { return angle_; }
  Point translation() const { return translation_; }
  double cos_angle() const { return cos_; }
  double sin_angle() const { return sin_; }

  Point apply(const Point& p) const;
  Point invert(const Point& p) const;
  std::vector<Point> apply(std::span<const Point> pts) const;
  std::vector<Point> invert(std::span<const Point> pts) const;

  friend bool operator==(const AffineTransform&, const AffineTransform&) = default;

 private:
  double angle_ = 0.0;
  Point translation_{};
  double cos_ = 1.0;
  double sin_ = 0.0;
};

struct Normalized {
  Polygon polygon;
  AffineTransform transform;  // original -> normalized
};

// Rotates the longest edge onto y = 0 with the interior above it, then
// shifts so that min x = 0.
Normalized normalize(const Polygon& p);

// Points where the line Y = y meets the boundary, sorted by x. Edges lying
// on the line contribute both endpoints.
std::vector<Point> horizontal_intersections(const Polygon& p, double y);

// Vertices whose y lies strictly inside (y_bottom, y_top).
std::vector<Point> vertices_in_band(const Polygon& p, double y_bottom,
                                    double y_top);

Polygon convex_hull(const Polygon& p);
std::vector<Point> convex_hull(std::span<const Point> pts);

enum class Location { kInside, kBoundary, kOutside };

Location point_in_polygon(const Polygon& p, const Point& pt);

// Area of the polygon clipped to the axis-aligned rectangle.
double clipped_area(const Polygon& p, const Bounds& rect);

}  // namespace covgrid
