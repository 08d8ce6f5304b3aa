#include "covgrid/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covgrid/error.hpp"

namespace covgrid {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double signed_area(std::span<const Point> v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point& a = v[i];
    const Point& b = v[(i + 1) % v.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

int orientation(const Point& a, const Point& b, const Point& c) {
  const double v = cross(a, b, c);
  if (v > kGeomEps) return 1;
  if (v < -kGeomEps) return -1;
  return 0;
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
  return std::min(a.x, b.x) - kGeomEps <= p.x &&
         p.x <= std::max(a.x, b.x) + kGeomEps &&
         std::min(a.y, b.y) - kGeomEps <= p.y &&
         p.y <= std::max(a.y, b.y) + kGeomEps;
}

bool segments_intersect(const Point& p1, const Point& p2, const Point& q1,
                        const Point& q2) {
  const int o1 = orientation(p1, p2, q1);
  const int o2 = orientation(p1, p2, q2);
  const int o3 = orientation(q1, q2, p1);
  const int o4 = orientation(q1, q2, p2);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  return o4 == 0 && on_segment(q1, q2, p2);
}

double point_segment_distance(const Point& a, const Point& b, const Point& p) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, {a.x + t * dx, a.y + t * dy});
}

bool is_simple(const std::vector<Point>& v) {
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a1 = v[i];
    const Point& a2 = v[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point& b1 = v[j];
      const Point& b2 = v[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared vertex is fine; folding back onto the neighbour is not.
        const Point& shared = (j == i + 1) ? a2 : a1;
        const Point& other_a = (j == i + 1) ? a1 : a2;
        const Point& other_b = (j == i + 1) ? b2 : b1;
        if (orientation(other_a, shared, other_b) == 0) {
          const double dot = (other_a.x - shared.x) * (other_b.x - shared.x) +
                             (other_a.y - shared.y) * (other_b.y - shared.y);
          if (dot > 0.0) return false;
        }
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

}  // namespace

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

Polygon::Polygon(std::vector<Point> vertices) {
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DegeneratePolygon("polygon has a non-finite coordinate");
    }
  }
  std::vector<Point> ring;
  ring.reserve(vertices.size());
  for (const Point& p : vertices) {
    if (ring.empty() || distance(ring.back(), p) >= kGeomEps) ring.push_back(p);
  }
  while (ring.size() > 1 && distance(ring.front(), ring.back()) < kGeomEps) {
    ring.pop_back();
  }
  if (ring.size() < 3) {
    throw DegeneratePolygon("polygon needs at least 3 distinct vertices, got " +
                            std::to_string(ring.size()));
  }
  const double area = signed_area(ring);
  if (std::abs(area) <= kGeomEps) {
    throw DegeneratePolygon("polygon has zero area");
  }
  if (area < 0.0) std::reverse(ring.begin(), ring.end());
  if (!is_simple(ring)) {
    throw DegeneratePolygon("polygon is self-intersecting");
  }
  vertices_ = std::move(ring);
}

Polygon validate_and_orient(std::vector<Point> vertices) {
  return Polygon(std::move(vertices));
}

double polygon_area(const Polygon& p) { return signed_area(p.vertices()); }

bool is_convex(const Polygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (cross(v[i], v[(i + 1) % n], v[(i + 2) % n]) < -kGeomEps) return false;
  }
  return true;
}

std::size_t longest_edge(const Polygon& p) {
  std::size_t best = 0;
  double best_len = -1.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double len = distance(p.edge_start(i), p.edge_end(i));
    if (len > best_len + kGeomEps) {
      best = i;
      best_len = len;
    }
  }
  return best;
}

Bounds bounds(std::span<const Point> pts) {
  Bounds b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const Point& p : pts) {
    b.min_x = std::min(b.min_x, p.x);
    b.min_y = std::min(b.min_y, p.y);
    b.max_x = std::max(b.max_x, p.x);
    b.max_y = std::max(b.max_y, p.y);
  }
  return b;
}

AffineTransform::AffineTransform(double angle, Point translation)
    : angle_(angle),
      translation_(translation),
      cos_(std::cos(angle)),
      sin_(std::sin(angle)) {
  // Exact values for the axis-aligned case keep the identity bit-exact.
  if (angle == 0.0) {
    cos_ = 1.0;
    sin_ = 0.0;
  }
}

Point AffineTransform::apply(const Point& p) const {
  return {cos_ * p.x - sin_ * p.y + translation_.x,
          sin_ * p.x + cos_ * p.y + translation_.y};
}

Point AffineTransform::invert(const Point& p) const {
  const double x = p.x - translation_.x;
  const double y = p.y - translation_.y;
  return {cos_ * x + sin_ * y, -sin_ * x + cos_ * y};
}

std::vector<Point> AffineTransform::apply(std::span<const Point> pts) const {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(apply(p));
  return out;
}

std::vector<Point> AffineTransform::invert(std::span<const Point> pts) const {
  std::vector<Point> out;
  out.reserve(pts.size());
  for (const Point& p : pts) out.push_back(invert(p));
  return out;
}

Normalized normalize(const Polygon& p) {
  const std::size_t e = longest_edge(p);
  const Point a = p.edge_start(e);
  const Point b = p.edge_end(e);
  // CCW ring: the interior lies left of a->b, so mapping a->b onto +x puts
  // the interior above the axis.
  const double angle = -std::atan2(b.y - a.y, b.x - a.x);
  const AffineTransform rotation(angle, {0.0, 0.0});
  const Point ra = rotation.apply(a);
  std::vector<Point> rotated = rotation.apply(p.vertices());
  double min_x = rotated[0].x;
  for (const Point& q : rotated) min_x = std::min(min_x, q.x);
  const AffineTransform transform(angle, {-min_x, -ra.y});

  std::vector<Point> out = transform.apply(p.vertices());
  out[e].y = 0.0;
  out[(e + 1) % out.size()].y = 0.0;
  for (Point& q : out) {
    if (std::abs(q.y) < kGeomEps) q.y = 0.0;
    if (std::abs(q.x) < kGeomEps) q.x = 0.0;
  }
  return {Polygon(std::move(out)), transform};
}

std::vector<Point> horizontal_intersections(const Polygon& p, double y) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point a = p.edge_start(i);
    const Point b = p.edge_end(i);
    const bool a_on = std::abs(a.y - y) < kGeomEps;
    const bool b_on = std::abs(b.y - y) < kGeomEps;
    if (a_on && b_on) {
      pts.push_back({a.x, y});
      pts.push_back({b.x, y});
      continue;
    }
    if (a_on) {
      pts.push_back({a.x, y});
      continue;
    }
    if (b_on) {
      pts.push_back({b.x, y});
      continue;
    }
    if ((a.y < y) != (b.y < y)) {
      const double t = (y - a.y) / (b.y - a.y);
      pts.push_back({a.x + t * (b.x - a.x), y});
    }
  }
  std::sort(pts.begin(), pts.end(),
            [](const Point& l, const Point& r) { return l.x < r.x; });
  std::vector<Point> merged;
  for (const Point& q : pts) {
    if (merged.empty() || std::abs(merged.back().x - q.x) >= kGeomEps) {
      merged.push_back(q);
    }
  }
  return merged;
}

std::vector<Point> vertices_in_band(const Polygon& p, double y_bottom,
                                    double y_top) {
  std::vector<Point> out;
  for (const Point& v : p.vertices()) {
    if (v.y > y_bottom + kGeomEps && v.y < y_top - kGeomEps) out.push_back(v);
  }
  return out;
}

std::vector<Point> convex_hull(std::span<const Point> input) {
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Point& a, const Point& b) {
                          return distance(a, b) < kGeomEps;
                        }),
            pts.end());
  if (pts.size() < 3) return pts;

  // Andrew's monotone chain; collinear points are dropped.
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= kGeomEps) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= kGeomEps) {
      --k;
    }
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Polygon convex_hull(const Polygon& p) {
  return Polygon(convex_hull(std::span<const Point>(p.vertices())));
}

Location point_in_polygon(const Polygon& p, const Point& pt) {
  bool inside = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point a = p.edge_start(i);
    const Point b = p.edge_end(i);
    if (point_segment_distance(a, b, pt) <= kGeomEps) return Location::kBoundary;
    if ((a.y > pt.y) != (b.y > pt.y)) {
      const double x = a.x + (pt.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (pt.x < x) inside = !inside;
    }
  }
  return inside ? Location::kInside : Location::kOutside;
}

double clipped_area(const Polygon& p, const Bounds& rect) {
  // Sutherland-Hodgman against the four half-planes. The subject may be
  // non-convex; the result can carry zero-width bridges but its area is exact.
  std::vector<Point> poly = p.vertices();
  auto clip = [&poly](auto inside, auto intersect) {
    std::vector<Point> out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point& cur = poly[i];
      const Point& prev = poly[(i + n - 1) % n];
      const bool cur_in = inside(cur);
      const bool prev_in = inside(prev);
      if (cur_in) {
        if (!prev_in) out.push_back(intersect(prev, cur));
        out.push_back(cur);
      } else if (prev_in) {
        out.push_back(intersect(prev, cur));
      }
    }
    poly = std::move(out);
  };
  auto at_x = [](double x) {
    return [x](const Point& a, const Point& b) {
      const double t = (x - a.x) / (b.x - a.x);
      return Point{x, a.y + t * (b.y - a.y)};
    };
  };
  auto at_y = [](double y) {
    return [y](const Point& a, const Point& b) {
      const double t = (y - a.y) / (b.y - a.y);
      return Point{a.x + t * (b.x - a.x), y};
    };
  };
  clip([&](const Point& q) { return q.x >= rect.min_x; }, at_x(rect.min_x));
  if (poly.empty()) return 0.0;
  clip([&](const Point& q) { return q.x <= rect.max_x; }, at_x(rect.max_x));
  if (poly.empty()) return 0.0;
  clip([&](const Point& q) { return q.y >= rect.min_y; }, at_y(rect.min_y));
  if (poly.empty()) return 0.0;
  clip([&](const Point& q) { return q.y <= rect.max_y; }, at_y(rect.max_y));
  if (poly.size() < 3) return 0.0;
  return std::abs(signed_area(poly));
}

}  // namespace covgrid
