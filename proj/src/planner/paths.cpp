#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "covgrid/error.hpp"
#include "covgrid/planner.hpp"
#include "local_search.hpp"

namespace covgrid {

DistanceMatrix::DistanceMatrix(std::size_t size, std::vector<double> entries,
                               double speed)
    : size_(size), entries_(std::move(entries)), speed_(speed) {
  if (!(speed > 0.0) || !std::isfinite(speed)) {
    throw NonPositiveSpeed("airspeed must be positive, got " +
                           std::to_string(speed));
  }
  if (entries_.size() != size_ * size_) {
    throw ValidationError("distance matrix entry count does not match size");
  }
}

DistanceMatrix DistanceMatrix::permuted(
    std::span<const std::size_t> perm) const {
  std::vector<double> out(size_ * size_);
  for (std::size_t i = 0; i < size_; ++i) {
    for (std::size_t j = 0; j < size_; ++j) {
      out[i * size_ + j] = (*this)(perm[i], perm[j]);
    }
  }
  return DistanceMatrix(size_, std::move(out), speed_);
}

DistanceMatrix distance_matrix(std::span<const Point> centers, double speed) {
  if (!(speed > 0.0)) {
    throw NonPositiveSpeed("airspeed must be positive, got " +
                           std::to_string(speed));
  }
  const std::size_t n = centers.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i * n + j] = d[j * n + i] = distance(centers[i], centers[j]);
    }
  }
  return DistanceMatrix(n, std::move(d), speed);
}

std::string_view to_string(PlanMode m) {
  switch (m) {
    case PlanMode::kPaper:
      return "paper";
    case PlanMode::kValid:
      return "valid";
    case PlanMode::kHeuristic:
      return "heuristic";
  }
  return "valid";
}

PlanMode plan_mode_from_string(std::string_view s) {
  if (s == "paper") return PlanMode::kPaper;
  if (s == "valid") return PlanMode::kValid;
  if (s == "heuristic") return PlanMode::kHeuristic;
  throw ValidationError("unknown mode '" + std::string(s) +
                        "', expected paper, valid or heuristic");
}

double coverage_time(std::span<const std::size_t> order,
                     const DistanceMatrix& m) {
  std::vector<unsigned char> seen(m.size(), 0);
  if (order.size() != m.size()) {
    throw InvalidPermutation("order has " + std::to_string(order.size()) +
                             " entries for " + std::to_string(m.size()) +
                             " cells");
  }
  for (std::size_t i : order) {
    if (i >= m.size() || seen[i]) {
      throw InvalidPermutation("order is not a permutation of the cells");
    }
    seen[i] = 1;
  }
  double length = 0.0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    length += m(order[k - 1], order[k]);
  }
  return length / m.speed();
}

bool is_single_path(std::span<const Arc> arcs, std::size_t n,
                    std::size_t start, std::size_t end) {
  if (arcs.size() + 1 != n) return false;
  std::vector<std::size_t> next(n, n);
  for (const Arc& a : arcs) {
    if (a.from >= n || a.to >= n || next[a.from] != n) return false;
    next[a.from] = a.to;
  }
  std::size_t cur = start;
  for (std::size_t steps = 1; steps < n; ++steps) {
    cur = next[cur];
    if (cur == n) return false;
  }
  return cur == end;
}

std::vector<std::vector<std::size_t>> arc_cycles(std::span<const Arc> arcs,
                                                 std::size_t n) {
  std::vector<std::size_t> next(n, n);
  for (const Arc& a : arcs) next[a.from] = a.to;
  std::vector<unsigned char> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::vector<std::size_t>> cycles;
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s] != 0) continue;
    std::vector<std::size_t> walk;
    std::size_t cur = s;
    while (cur != n && state[cur] == 0) {
      state[cur] = 1;
      walk.push_back(cur);
      cur = next[cur];
    }
    if (cur != n && state[cur] == 1) {
      const auto it = std::find(walk.begin(), walk.end(), cur);
      cycles.emplace_back(it, walk.end());
    }
    for (std::size_t w : walk) state[w] = 2;
  }
  return cycles;
}

PathPlan heuristic_path(const DistanceMatrix& m, bool free_endpoints) {
  const std::size_t n = m.size();
  if (n < 2) throw ValidationError("planning needs at least 2 cells");
  PathPlan best;
  best.mode = PlanMode::kHeuristic;
  best.t_cov = std::numeric_limits<double>::infinity();
  auto consider = [&](std::size_t s, std::size_t t) {
    std::vector<std::size_t> order = detail::nearest_neighbor_path(m, s, t);
    detail::two_opt(order, m);
    const double t_cov = coverage_time(order, m);
    if (t_cov < best.t_cov) {
      best.order = std::move(order);
      best.t_cov = t_cov;
    }
  };
  if (!free_endpoints) {
    consider(0, n - 1);
  } else {
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t t = s + 1; t < n; ++t) consider(s, t);
    }
  }
  // With pinned endpoints there is only one path when n <= 3.
  best.optimal = n <= 3 && !free_endpoints;
  return best;
}

}  // namespace covgrid
