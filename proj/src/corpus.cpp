#include "covgrid/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace covgrid {

Polygon random_convex_polygon(std::uint64_t seed, const CorpusSpec& spec) {
  std::mt19937_64 rng(seed);
  for (;;) {
    const std::size_t span = spec.max_vertices - spec.min_vertices + 1;
    const std::size_t k =
        spec.min_vertices + static_cast<std::size_t>(unit_uniform(rng) * static_cast<double>(span));
    const double diameter =
        spec.min_diameter + unit_uniform(rng) * (spec.max_diameter - spec.min_diameter);
    const double a = diameter / 2.0;
    const double b = a * (0.35 + 0.65 * unit_uniform(rng));
    const double tilt = 2.0 * std::numbers::pi * unit_uniform(rng);

    std::vector<Point> pts;
    for (std::size_t i = 0; i < k; ++i) {
      const double t = 2.0 * std::numbers::pi * unit_uniform(rng);
      const double x = a * std::cos(t);
      const double y = b * std::sin(t);
      pts.push_back({x * std::cos(tilt) - y * std::sin(tilt) + a,
                     x * std::sin(tilt) + y * std::cos(tilt) + a});
    }
    std::vector<Point> hull = convex_hull(std::span<const Point>(pts));
    // Reject near-degenerate draws (clustered angles).
    if (hull.size() >= 3) {
      const Polygon p(std::move(hull));
      if (polygon_area(p) > 0.05 * a * b) return p;
    }
  }
}

}  // namespace covgrid
