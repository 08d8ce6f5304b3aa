#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covgrid/decomposition.hpp"
#include "covgrid/geometry.hpp"
#include "covgrid/planner.hpp"

namespace covgrid {

// Operating point used when a scenario leaves r or v out: footprint radius
// 50 sqrt(2) m (100 m cells) and 12 m/s airspeed.
inline const double kDefaultRadius = 50.0 * 1.4142135623730951;
inline constexpr double kDefaultSpeed = 12.0;

struct Scenario {
  Polygon polygon;
  double radius = kDefaultRadius;
  double speed = kDefaultSpeed;
  Method method = Method::kAgd;
  PlanMode mode = PlanMode::kValid;
  bool free_endpoints = false;
  std::size_t exact_cap = kDefaultExactCap;
};

// Accepts the JSON scenario schema or a bare WKT POLYGON (defaults for
// everything else). Throws ParseError or ValidationError.
Scenario parse_scenario(std::string_view text);

// Outer ring of a WKT POLYGON; the closing vertex is dropped.
std::vector<Point> parse_wkt_polygon(std::string_view text);

std::string write_decomposition(const Decomposition& d);
Decomposition read_decomposition(std::string_view text);

std::string write_plan(const PathPlan& plan);
std::string write_arc_solution(const ArcSolution& sol);
// Reads either plan document; an arc solution must form a single path.
PathPlan read_plan(std::string_view text);

std::string render_svg(const Decomposition& d,
                       const std::optional<PathPlan>& plan = std::nullopt);

struct ComparisonCase {
  std::string name;
  ComparisonRow row;
};

// Comparison table as CSV; a trailing "mean" row is added for more than one
// case.
std::string write_comparison_csv(const std::vector<ComparisonCase>& cases);

}  // namespace covgrid
