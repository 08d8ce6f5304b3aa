#include <cmath>

#include "covgrid/decomposition.hpp"
#include "covgrid/error.hpp"
#include "covgrid/planner.hpp"

namespace covgrid {

double relative_improvement(double z_sgd, double z_agd) {
  if (z_sgd == 0.0) return 0.0;
  return (z_sgd - z_agd) / z_sgd;
}

double absolute_gap(double z_sgd, double z_agd) { return std::abs(z_sgd - z_agd); }

ComparisonRow compare_methods(const Polygon& p, double radius, double speed,
                              const SolverOptions& options) {
  if (!(speed > 0.0)) throw NonPositiveSpeed("airspeed must be positive");
  const Decomposition sgd = sgd_decompose(p, radius);
  const Decomposition agd = agd_decompose(p, radius);

  ComparisonRow row;
  row.area = polygon_area(p);
  row.n_sgd = sgd.cells.size();
  row.n_agd = agd.cells.size();
  row.cell_reduction = static_cast<long long>(row.n_sgd) -
                       static_cast<long long>(row.n_agd);
  row.z_sgd = sgd_lower_bound(row.n_sgd, radius, speed);

  if (row.n_agd < 2) {
    row.z_agd = 0.0;
    row.z_agd_optimal = true;
    row.z_agd_paper = 0.0;
  } else {
    const DistanceMatrix m = distance_matrix(agd.centers(), speed);
    if (row.n_agd <= options.exact_cap) {
      const PathPlan plan = solve_valid_path(m, options);
      row.z_agd = plan.t_cov;
      row.z_agd_optimal = true;
      row.z_agd_paper = solve_paper_mode(m, options).t_cov;
    } else {
      const PathPlan plan = heuristic_path(m, options.free_endpoints);
      row.z_agd = plan.t_cov;
      row.z_agd_optimal = false;
    }
  }
  row.relative_improvement = relative_improvement(row.z_sgd, row.z_agd);
  row.absolute_gap = absolute_gap(row.z_sgd, row.z_agd);
  return row;
}

}  // namespace covgrid
