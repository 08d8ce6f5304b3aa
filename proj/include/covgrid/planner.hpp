#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "covgrid/decomposition.hpp"
#include "covgrid/geometry.hpp"

namespace covgrid {

// Symmetric Euclidean distances between cell centers, plus the airspeed
// that converts them into flight time.
class DistanceMatrix {
 public:
  DistanceMatrix(std::size_t size, std::vector<double> entries, double speed);

  std::size_t size() const { return size_; }
  double speed() const { return speed_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * size_ + j];
  }
  std::span<const double> entries() const { return entries_; }

  // Copy with rows/columns relabelled so that new index k is old perm[k].
  DistanceMatrix permuted(std::span<const std::size_t> perm) const;

 private:
  std::size_t size_;
  std::vector<double> entries_;
  double speed_;
};

DistanceMatrix distance_matrix(std::span<const Point> centers, double speed);

enum class PlanMode { kPaper, kValid, kHeuristic };

std::string_view to_string(PlanMode m);
PlanMode plan_mode_from_string(std::string_view s);

struct Arc {
  std::size_t from = 0;
  std::size_t to = 0;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Optimum of the arc-selection model as written: every cell but the end is
// left exactly once, every cell but the start is entered exactly once, and
// no two cells are joined in both directions. Cycles of length >= 3 are not
// excluded, so the arc set need not be a single path.
struct ArcSolution {
  std::vector<Arc> arcs;                // sorted
  std::vector<unsigned char> enter;     // z_i
  std::vector<unsigned char> exit;      // x_i
  std::size_t start = 0;
  std::size_t end = 0;
  double t_cov = 0.0;
  bool optimal = false;
  bool single_path = false;
};

struct PathPlan {
  std::vector<std::size_t> order;  // 0-based cell indices
  double t_cov = 0.0;
  PlanMode mode = PlanMode::kValid;
  bool optimal = false;
};

inline constexpr std::size_t kDefaultExactCap = 60;

struct SolverOptions {
  std::size_t exact_cap = kDefaultExactCap;
  // Search every (start, end) pair instead of fixing the first and last
  // cell.
  bool free_endpoints = false;
};

ArcSolution solve_paper_mode(const DistanceMatrix& m,
                             const SolverOptions& options = {});

// Minimum-cost Hamiltonian path from cell 0 to cell n-1 (or over all
// endpoint pairs with free_endpoints).
PathPlan solve_valid_path(const DistanceMatrix& m,
                          const SolverOptions& options = {});

// Nearest-neighbour construction followed by 2-opt to a local optimum.
PathPlan heuristic_path(const DistanceMatrix& m, bool free_endpoints = false);

double coverage_time(std::span<const std::size_t> order,
                     const DistanceMatrix& m);

// Arc-set helpers.
bool is_single_path(std::span<const Arc> arcs, std::size_t n,
                    std::size_t start, std::size_t end);
std::vector<std::vector<std::size_t>> arc_cycles(std::span<const Arc> arcs,
                                                 std::size_t n);

// One row of the method comparison table.
struct ComparisonRow {
  double area = 0.0;
  std::size_t n_sgd = 0;
  std::size_t n_agd = 0;
  long long cell_reduction = 0;
  double z_sgd = 0.0;
  double z_agd = 0.0;
  bool z_agd_optimal = false;
  std::optional<double> z_agd_paper;  // relaxed model, when under the cap
  double relative_improvement = 0.0;  // fraction, not percent
  double absolute_gap = 0.0;
};

double relative_improvement(double z_sgd, double z_agd);
double absolute_gap(double z_sgd, double z_agd);

ComparisonRow compare_methods(const Polygon& p, double radius, double speed,
                              const SolverOptions& options = {});

}  // namespace covgrid
