#pragma once

#include <cstdint>
#include <random>

#include "covgrid/geometry.hpp"

namespace covgrid {

// Seeded stand-in benchmark polygons: convex hulls of points sampled on a
// randomly sized and rotated ellipse.
struct CorpusSpec {
  std::size_t min_vertices = 5;
  std::size_t max_vertices = 12;
  double min_diameter = 300.0;  // meters, major axis of the ellipse
  double max_diameter = 1500.0;
};

// Uniform double in [0, 1) from the top 53 bits, independent of the
// standard library's distribution implementations.
inline double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Polygon random_convex_polygon(std::uint64_t seed, const CorpusSpec& spec = {});

}  // namespace covgrid
