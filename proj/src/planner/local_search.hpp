#pragma once

#include <cstddef>
#include <vector>

#include "covgrid/planner.hpp"

namespace covgrid::detail {

double path_length(const std::vector<std::size_t>& order,
                   const DistanceMatrix& m);

// Greedy path from `start` through every other cell, ending at `end`.
std::vector<std::size_t> nearest_neighbor_path(const DistanceMatrix& m,
                                               std::size_t start,
                                               std::size_t end);

// Segment reversal with both endpoints pinned; runs to a local optimum.
void two_opt(std::vector<std::size_t>& order, const DistanceMatrix& m);

// Moves segments of 1-3 cells elsewhere in the path (either direction).
void or_opt(std::vector<std::size_t>& order, const DistanceMatrix& m);

}  // namespace covgrid::detail
