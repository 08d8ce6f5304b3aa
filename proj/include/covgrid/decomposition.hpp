#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "covgrid/geometry.hpp"

namespace covgrid {

// Axis-aligned rectangle in the normalized frame. `center` is stored in the
// caller's original coordinates; the rectangle's orientation there is given
// by the owning Decomposition's transform.
struct Cell {
  Point center;
  double width = 0.0;   // x-extent in the normalized frame
  double height = 0.0;  // y-extent in the normalized frame

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Per-channel bookkeeping of the adaptive sweep, in normalized coordinates.
// A degenerate channel (no polygon cross-section) has cells == 0.
struct ChannelTrace {
  double y_bottom = 0.0;
  double y_top = 0.0;           // y_bottom + sqrt(2) r, used to collect points
  double y_top_adjusted = 0.0;  // channel ceiling after the width adjustment
  double length = 0.0;          // x_max - x_min
  std::size_t cells = 0;
  double excess = 0.0;
  double delta = 0.0;
  double x_min = 0.0;
  double x_max = 0.0;

  friend bool operator==(const ChannelTrace&, const ChannelTrace&) = default;
};

enum class Method { kAgd, kSgd };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

struct Decomposition {
  std::vector<Cell> cells;  // channel-major, bottom-up, left to right
  std::vector<ChannelTrace> channels;
  Method method = Method::kAgd;
  double radius = 0.0;
  AffineTransform transform;  // original -> normalized
  bool hull_used = false;
  std::vector<Point> polygon;  // original input ring (CCW)

  std::vector<Point> centers() const;
  // Cell rectangle in the normalized frame.
  Bounds normalized_rect(std::size_t i) const;
  // True if `p` (original coordinates) lies in some cell rectangle.
  bool covers(const Point& p, double tolerance = kGeomEps) const;

  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

struct DecomposeOptions {
  // Run the sweep directly on non-convex input, taking [x_min, x_max] as the
  // channel span even where the cross-section is disconnected. Off by
  // default: non-convex input goes through its hull and is pruned.
  bool direct_nonconvex = false;
};

// Edge length sqrt(2) r of the square inscribed in the footprint circle.
double footprint_square_edge(double radius);

// Height of a cell whose width was shrunk by `delta` while its diagonal
// stays 2r.
double adjusted_cell_height(double radius, double delta);

Decomposition agd_decompose(const Polygon& p, double radius,
                            const DecomposeOptions& options = {});

Decomposition sgd_decompose(const Polygon& p, double radius);

// Drops cells whose rectangle meets `original` with zero area.
Decomposition prune_outside_cells(Decomposition d, const Polygon& original);

// Coverage-time lower bound for a uniform grid: (n - 1) sqrt(2) r / v.
double sgd_lower_bound(std::size_t n_cells, double radius, double speed);

}  // namespace covgrid
