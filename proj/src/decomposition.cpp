#include "covgrid/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "covgrid/error.hpp"

namespace covgrid {

namespace {

// Slack on l / edge before taking the ceiling, so an exact multiple that
// picks up rounding noise does not spawn an extra cell.
constexpr double kCountSlack = 1e-9;

void check_radius(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw NonPositiveRadius("footprint radius must be positive, got " +
                            std::to_string(radius));
  }
}

// The frame in which both methods run: the polygon itself when convex,
// otherwise its hull, so the whole input sits in y >= 0.
Normalized frame_for(const Polygon& p) {
  return is_convex(p) ? normalize(p) : normalize(convex_hull(p));
}

bool meets_with_area(const Polygon& normalized_poly, const Bounds& rect) {
  const double cell_area = (rect.max_x - rect.min_x) * (rect.max_y - rect.min_y);
  return clipped_area(normalized_poly, rect) > 1e-9 * cell_area;
}

}  // namespace

std::string_view to_string(Method m) {
  return m == Method::kAgd ? "agd" : "sgd";
}

Method method_from_string(std::string_view s) {
  if (s == "agd") return Method::kAgd;
  if (s == "sgd") return Method::kSgd;
  throw ValidationError("unknown method '" + std::string(s) +
                        "', expected agd or sgd");
}

std::vector<Point> Decomposition::centers() const {
  std::vector<Point> out;
  out.reserve(cells.size());
  for (const Cell& c : cells) out.push_back(c.center);
  return out;
}

Bounds Decomposition::normalized_rect(std::size_t i) const {
  const Cell& c = cells[i];
  const Point q = transform.apply(c.center);
  return {q.x - c.width / 2, q.y - c.height / 2, q.x + c.width / 2,
          q.y + c.height / 2};
}

bool Decomposition::covers(const Point& p, double tolerance) const {
  const Point q = transform.apply(p);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Bounds b = normalized_rect(i);
    if (q.x >= b.min_x - tolerance && q.x <= b.max_x + tolerance &&
        q.y >= b.min_y - tolerance && q.y <= b.max_y + tolerance) {
      return true;
    }
  }
  return false;
}

double footprint_square_edge(double radius) { return std::sqrt(2.0) * radius; }

double adjusted_cell_height(double radius, double delta) {
  return std::sqrt(2.0 * radius * radius +
                   2.0 * std::sqrt(2.0) * radius * delta - delta * delta);
}

Decomposition agd_decompose(const Polygon& p, double radius,
                            const DecomposeOptions& options) {
  check_radius(radius);
  const bool convex = is_convex(p);
  const Normalized frame = frame_for(p);
  const bool direct = !convex && options.direct_nonconvex;
  const Polygon sweep =
      direct ? Polygon(frame.transform.apply(p.vertices())) : frame.polygon;

  Decomposition d;
  d.method = Method::kAgd;
  d.radius = radius;
  d.transform = frame.transform;
  d.hull_used = !convex && !direct;
  d.polygon = p.vertices();

  const double edge = footprint_square_edge(radius);
  const Bounds extent = bounds(sweep.vertices());
  const double y_max = extent.max_y;
  double y_bottom = extent.min_y;

  while (y_max - y_bottom >= kGeomEps) {
    ChannelTrace ch;
    ch.y_bottom = y_bottom;
    ch.y_top = y_bottom + edge;

    std::vector<Point> pts = horizontal_intersections(sweep, ch.y_bottom);
    for (const Point& q : horizontal_intersections(sweep, ch.y_top)) {
      pts.push_back(q);
    }
    for (const Point& q : vertices_in_band(sweep, ch.y_bottom, ch.y_top)) {
      pts.push_back(q);
    }

    if (!pts.empty()) {
      const auto [lo, hi] = std::minmax_element(
          pts.begin(), pts.end(),
          [](const Point& a, const Point& b) { return a.x < b.x; });
      ch.x_min = lo->x;
      ch.x_max = hi->x;
      ch.length = ch.x_max - ch.x_min;
    }

    if (pts.empty() || ch.length < kGeomEps) {
      // Degenerate channel (e.g. an apex exactly on y_bottom): no cells.
      ch.y_top_adjusted = ch.y_top;
      d.channels.push_back(ch);
      y_bottom = ch.y_top_adjusted;
      continue;
    }

    ch.cells = static_cast<std::size_t>(
        std::max(1.0, std::ceil(ch.length / edge - kCountSlack)));
    const double n = static_cast<double>(ch.cells);
    ch.excess = std::max(0.0, edge * n - ch.length);
    ch.delta = ch.excess / n;
    const double height = adjusted_cell_height(radius, ch.delta);
    const double width = edge - ch.delta;
    ch.y_top_adjusted = ch.y_bottom + height;

    const double cy = ch.y_bottom + height / 2;
    for (std::size_t k = 0; k < ch.cells; ++k) {
      const double cx = ch.x_min + width / 2 + static_cast<double>(k) * width;
      d.cells.push_back({frame.transform.invert({cx, cy}), width, height});
    }
    d.channels.push_back(ch);
    y_bottom = ch.y_top_adjusted;
  }

  if (d.hull_used) d = prune_outside_cells(std::move(d), p);
  return d;
}

Decomposition sgd_decompose(const Polygon& p, double radius) {
  check_radius(radius);
  const Normalized frame = frame_for(p);
  const Polygon target(frame.transform.apply(p.vertices()));

  Decomposition d;
  d.method = Method::kSgd;
  d.radius = radius;
  d.transform = frame.transform;
  d.hull_used = false;
  d.polygon = p.vertices();

  const double edge = footprint_square_edge(radius);
  const Bounds extent = bounds(target.vertices());
  const auto count = [edge](double span) {
    return static_cast<std::size_t>(
        std::max(1.0, std::ceil(span / edge - kCountSlack)));
  };
  const std::size_t cols = count(extent.max_x - extent.min_x);
  const std::size_t rows = count(extent.max_y - extent.min_y);

  for (std::size_t row = 0; row < rows; ++row) {
    ChannelTrace ch;
    ch.y_bottom = extent.min_y + static_cast<double>(row) * edge;
    ch.y_top = ch.y_bottom + edge;
    ch.y_top_adjusted = ch.y_top;
    bool first = true;
    for (std::size_t col = 0; col < cols; ++col) {
      const double x0 = extent.min_x + static_cast<double>(col) * edge;
      const Bounds rect{x0, ch.y_bottom, x0 + edge, ch.y_top};
      if (!meets_with_area(target, rect)) continue;
      if (first) ch.x_min = x0;
      first = false;
      ch.x_max = x0 + edge;
      ++ch.cells;
      d.cells.push_back({frame.transform.invert({x0 + edge / 2,
                                                 ch.y_bottom + edge / 2}),
                         edge, edge});
    }
    ch.length = ch.x_max - ch.x_min;
    d.channels.push_back(ch);
  }
  return d;
}

Decomposition prune_outside_cells(Decomposition d, const Polygon& original) {
  const Polygon target(d.transform.apply(original.vertices()));
  std::vector<Cell> kept;
  kept.reserve(d.cells.size());
  for (std::size_t i = 0; i < d.cells.size(); ++i) {
    if (meets_with_area(target, d.normalized_rect(i))) kept.push_back(d.cells[i]);
  }
  d.cells = std::move(kept);
  return d;
}

double sgd_lower_bound(std::size_t n_cells, double radius, double speed) {
  check_radius(radius);
  if (!(speed > 0.0)) throw NonPositiveSpeed("airspeed must be positive");
  if (n_cells == 0) throw ValidationError("cell count must be at least 1");
  return static_cast<double>(n_cells - 1) * footprint_square_edge(radius) /
         speed;
}

}  // namespace covgrid
