#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "assignment.hpp"
#include "covgrid/error.hpp"
#include "covgrid/planner.hpp"
#include "local_search.hpp"

namespace covgrid {

namespace {

// Branch-and-bound over the assignment relaxation. Rows are the cells that
// must be exited (all but the last), columns the cells that must be entered
// (all but the first): row r is cell r, column c is cell c + 1. Self-loops
// are forbidden up front; 2-cycles are removed by branching.
class PaperModeSearch {
 public:
  explicit PaperModeSearch(const DistanceMatrix& m) : m_(m), n_(m.size()) {
    const std::size_t k = n_ - 1;
    cost_.resize(k * k);
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) cost_[r * k + c] = m(r, c + 1);
    }
  }

  // `seed` is any feasible successor array (e.g. a Hamiltonian path).
  void run(std::vector<std::size_t> seed) {
    best_next_ = std::move(seed);
    best_value_ = 0.0;
    for (std::size_t a = 0; a + 1 < n_; ++a) best_value_ += m_(a, best_next_[a]);

    detail::Assignment root(n_ - 1, &cost_);
    for (std::size_t cell = 1; cell + 1 < n_; ++cell) root.forbid(cell, cell - 1);
    search(std::move(root));
  }

  const std::vector<std::size_t>& best_next() const { return best_next_; }
  double best_value() const { return best_value_; }

 private:
  bool prunable(double bound) const {
    return bound >= best_value_ - 1e-10 * (1.0 + std::abs(best_value_));
  }

  void forbid_arc(detail::Assignment& a, std::size_t from, std::size_t to) {
    if (a.allowed(from, to - 1)) a.forbid(from, to - 1);
  }

  void search(detail::Assignment node) {
    if (!node.repair()) return;
    const double bound = node.value();
    if (prunable(bound)) return;

    const std::vector<std::size_t> cols = node.row_to_col();
    std::vector<std::size_t> next(n_ - 1);
    for (std::size_t r = 0; r + 1 < n_; ++r) next[r] = cols[r] + 1;

    // First 2-cycle in index order.
    std::size_t a = n_, b = n_;
    for (std::size_t i = 0; i + 1 < n_ && a == n_; ++i) {
      const std::size_t j = next[i];
      if (j + 1 < n_ && next[j] == i && i < j) {
        a = i;
        b = j;
      }
    }
    if (a == n_) {
      best_value_ = bound;
      best_next_ = next;
      return;
    }

    // Either a->b is absent, or a->b is present and then b->a must be.
    {
      detail::Assignment without = node;
      forbid_arc(without, a, b);
      search(std::move(without));
    }
    {
      detail::Assignment with = std::move(node);
      forbid_arc(with, b, a);
      for (std::size_t to = 1; to < n_; ++to) {
        if (to != b) forbid_arc(with, a, to);
      }
      for (std::size_t from = 0; from + 1 < n_; ++from) {
        if (from != a) forbid_arc(with, from, b);
      }
      search(std::move(with));
    }
  }

  const DistanceMatrix& m_;
  std::size_t n_;
  std::vector<double> cost_;
  std::vector<std::size_t> best_next_;
  double best_value_ = std::numeric_limits<double>::infinity();
};

ArcSolution solve_fixed_endpoints(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> seed_order = detail::nearest_neighbor_path(m, 0, n - 1);
  detail::two_opt(seed_order, m);
  std::vector<std::size_t> seed(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) seed[seed_order[k]] = seed_order[k + 1];

  PaperModeSearch search(m);
  search.run(std::move(seed));

  ArcSolution sol;
  sol.start = 0;
  sol.end = n - 1;
  sol.enter.assign(n, 1);
  sol.exit.assign(n, 1);
  sol.enter[0] = 0;
  sol.exit[n - 1] = 0;
  double length = 0.0;
  for (std::size_t a = 0; a + 1 < n; ++a) {
    sol.arcs.push_back({a, search.best_next()[a]});
    length += m(a, search.best_next()[a]);
  }
  sol.t_cov = length / m.speed();
  sol.optimal = true;
  sol.single_path = is_single_path(sol.arcs, n, 0, n - 1);
  return sol;
}

}  // namespace

ArcSolution solve_paper_mode(const DistanceMatrix& m,
                             const SolverOptions& options) {
  const std::size_t n = m.size();
  if (n < 2) throw Infeasible("paper-mode model needs at least 2 cells");
  if (n > options.exact_cap) throw SizeLimitExceeded(n, options.exact_cap);
  if (!options.free_endpoints) return solve_fixed_endpoints(m);

  // Reversing every arc maps an (s, e) solution onto an (e, s) one of equal
  // cost, so unordered pairs suffice.
  ArcSolution best;
  best.t_cov = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t e = s + 1; e < n; ++e) {
      perm.clear();
      perm.push_back(s);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != s && i != e) perm.push_back(i);
      }
      perm.push_back(e);
      const ArcSolution local = solve_fixed_endpoints(m.permuted(perm));
      if (local.t_cov < best.t_cov - 1e-12) {
        best = local;
        best.start = s;
        best.end = e;
        for (Arc& a : best.arcs) a = {perm[a.from], perm[a.to]};
        std::sort(best.arcs.begin(), best.arcs.end());
        best.enter.assign(n, 1);
        best.exit.assign(n, 1);
        best.enter[s] = 0;
        best.exit[e] = 0;
      }
    }
  }
  return best;
}

}  // namespace covgrid
