#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "covgrid/error.hpp"
#include "covgrid/planner.hpp"
#include "local_search.hpp"

namespace covgrid {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum EdgeState : unsigned char { kFree = 0, kIncluded = 1, kExcluded = 2 };

// Exact minimum Hamiltonian path 0 -> n-1. The path is closed into a tour by
// forcing edge {0, n-1}; tours are then found by branch-and-bound on the
// Held-Karp 1-tree bound (subgradient-optimized node penalties) with
// Volgenant-Jonker edge branching.
class TourSearch {
 public:
  explicit TourSearch(const DistanceMatrix& m) : m_(m), n_(m.size()) {}

  std::vector<std::size_t> run() {
    const std::size_t last = n_ - 1;
    best_order_ = detail::nearest_neighbor_path(m_, 0, last);
    for (int round = 0; round < 3; ++round) {
      detail::two_opt(best_order_, m_);
      detail::or_opt(best_order_, m_);
    }
    best_cost_ = detail::path_length(best_order_, m_) + m_(0, last);

    Node root;
    root.state.assign(n_ * n_, kFree);
    root.penalty.assign(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) root.state[i * n_ + i] = kExcluded;
    set(root.state, 0, last, kIncluded);
    if (propagate(root.state)) {
      search(std::move(root), root_iterations(), true);
    }
    return best_order_;
  }

 private:
  struct Node {
    std::vector<unsigned char> state;
    std::vector<double> penalty;
  };

  struct OneTree {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<int> degree;
    double bound = -kInf;
    double length = 0.0;  // with the original distances
  };

  std::size_t root_iterations() const { return 50 + 10 * n_; }
  std::size_t child_iterations() const { return 20 + n_ / 2; }

  double tolerance() const { return 1e-10 * (1.0 + std::abs(best_cost_)); }

  unsigned char get(const std::vector<unsigned char>& s, std::size_t i,
                    std::size_t j) const {
    return s[i * n_ + j];
  }
  void set(std::vector<unsigned char>& s, std::size_t i, std::size_t j,
           unsigned char v) const {
    s[i * n_ + j] = v;
    s[j * n_ + i] = v;
  }

  // Degree and premature-cycle propagation to a fixpoint.
  bool propagate(std::vector<unsigned char>& s) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < n_; ++i) {
        std::size_t inc = 0, free = 0;
        for (std::size_t j = 0; j < n_; ++j) {
          if (j == i) continue;
          inc += get(s, i, j) == kIncluded;
          free += get(s, i, j) == kFree;
        }
        if (inc > 2 || inc + free < 2) return false;
        if (free == 0) continue;
        if (inc == 2 || inc + free == 2) {
          const unsigned char to = inc == 2 ? kExcluded : kIncluded;
          for (std::size_t j = 0; j < n_; ++j) {
            if (j != i && get(s, i, j) == kFree) set(s, i, j, to);
          }
          changed = true;
        }
      }
      // Included edges form disjoint paths; closing one early is illegal.
      std::vector<std::size_t> other_end(n_);
      std::iota(other_end.begin(), other_end.end(), 0);
      std::vector<std::size_t> path_size(n_, 1);
      std::vector<unsigned char> seen(n_, 0);
      for (std::size_t i = 0; i < n_; ++i) {
        std::size_t inc = 0;
        for (std::size_t j = 0; j < n_; ++j) inc += j != i && get(s, i, j) == kIncluded;
        if (inc == 2 || seen[i]) continue;
        // Walk the included path starting at endpoint i.
        std::size_t prev = n_, cur = i, count = 1;
        seen[i] = 1;
        for (;;) {
          std::size_t nxt = n_;
          for (std::size_t j = 0; j < n_; ++j) {
            if (j != cur && j != prev && get(s, cur, j) == kIncluded) {
              nxt = j;
              break;
            }
          }
          if (nxt == n_) break;
          prev = cur;
          cur = nxt;
          seen[cur] = 1;
          ++count;
        }
        if (cur != i && count < n_ && get(s, i, cur) == kFree) {
          set(s, i, cur, kExcluded);
          changed = true;
        }
      }
      // A cycle made only of included edges must span every node.
      std::size_t on_paths = 0;
      for (std::size_t i = 0; i < n_; ++i) on_paths += seen[i];
      if (on_paths != n_ && on_paths != 0) {
        // Nodes not reached from a path endpoint all have two included
        // edges, i.e. they sit on included cycles shorter than a tour.
        return false;
      }
      if (on_paths == 0) {
        // Every node has two included edges: one tour or several cycles.
        std::size_t prev = n_, cur = 0, count = 1;
        for (;;) {
          std::size_t nxt = n_;
          for (std::size_t j = 0; j < n_; ++j) {
            if (j != cur && j != prev && get(s, cur, j) == kIncluded) {
              nxt = j;
              break;
            }
          }
          if (nxt == 0 || nxt == n_) break;
          prev = cur;
          cur = nxt;
          ++count;
        }
        if (count != n_) return false;
      }
    }
    return true;
  }

  double weight(std::size_t i, std::size_t j,
                const std::vector<double>& penalty) const {
    return m_(i, j) + penalty[i] + penalty[j];
  }

  // Minimum 1-tree on the current edge states: spanning tree over nodes
  // 1..n-1 plus two edges at node 0; included edges forced, excluded absent.
  bool one_tree(const std::vector<unsigned char>& s,
                const std::vector<double>& penalty, OneTree& out) const {
    out.edges.clear();
    out.degree.assign(n_, 0);
    double total = 0.0;
    out.length = 0.0;

    // Prim; included edges are ranked ahead of every free edge.
    std::vector<double> key(n_, kInf);
    std::vector<unsigned char> forced(n_, 0);
    std::vector<std::size_t> parent(n_, n_);
    std::vector<unsigned char> in_tree(n_, 0);
    key[1] = 0.0;
    for (std::size_t step = 1; step < n_; ++step) {
      std::size_t u = n_;
      for (std::size_t v = 1; v < n_; ++v) {
        if (in_tree[v] || key[v] == kInf) continue;
        if (u == n_ || forced[v] > forced[u] ||
            (forced[v] == forced[u] && key[v] < key[u])) {
          u = v;
        }
      }
      if (u == n_) return false;
      in_tree[u] = 1;
      if (parent[u] != n_) {
        out.edges.emplace_back(parent[u], u);
        total += weight(parent[u], u, penalty);
        out.length += m_(parent[u], u);
        ++out.degree[parent[u]];
        ++out.degree[u];
      }
      for (std::size_t v = 1; v < n_; ++v) {
        if (in_tree[v] || get(s, u, v) == kExcluded) continue;
        const bool f = get(s, u, v) == kIncluded;
        const double w = weight(u, v, penalty);
        if ((f && !forced[v]) || (f == static_cast<bool>(forced[v]) && w < key[v])) {
          key[v] = w;
          parent[v] = u;
          forced[v] = f;
        }
      }
    }
    // Every included edge among 1..n-1 must have made it into the tree.
    std::size_t included = 0, used = 0;
    for (std::size_t i = 1; i < n_; ++i) {
      for (std::size_t j = i + 1; j < n_; ++j) included += get(s, i, j) == kIncluded;
    }
    for (const auto& [a, b] : out.edges) used += get(s, a, b) == kIncluded;
    if (used != included) return false;

    // Node 0: included edges first, then the cheapest free ones.
    std::vector<std::size_t> picks;
    for (std::size_t j = 1; j < n_; ++j) {
      if (get(s, 0, j) == kIncluded) picks.push_back(j);
    }
    while (picks.size() < 2) {
      std::size_t best = n_;
      for (std::size_t j = 1; j < n_; ++j) {
        if (get(s, 0, j) != kFree ||
            std::find(picks.begin(), picks.end(), j) != picks.end()) {
          continue;
        }
        if (best == n_ || weight(0, j, penalty) < weight(0, best, penalty)) best = j;
      }
      if (best == n_) return false;
      picks.push_back(best);
    }
    for (std::size_t j : picks) {
      out.edges.emplace_back(0, j);
      total += weight(0, j, penalty);
      out.length += m_(0, j);
      ++out.degree[0];
      ++out.degree[j];
    }
    double penalty_sum = 0.0;
    for (double p : penalty) penalty_sum += p;
    out.bound = total - 2.0 * penalty_sum;
    return true;
  }

  void record_tour(const OneTree& tree) {
    if (tree.length >= best_cost_ - tolerance()) return;
    std::vector<std::vector<std::size_t>> adj(n_);
    for (const auto& [a, b] : tree.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    // Walk from 0 away from n-1; the tour ends by returning to n-1 -> 0.
    std::vector<std::size_t> order{0};
    std::size_t prev = n_ - 1, cur = 0;
    while (order.size() < n_) {
      const std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      order.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    best_order_ = std::move(order);
    best_cost_ = tree.length;
  }

  // Subgradient ascent on the node penalties. Returns false when the node
  // is closed (infeasible, pruned, or solved by a tour).
  bool bound(Node& node, std::size_t iterations, bool root, OneTree& best) {
    std::vector<double> penalty = node.penalty;
    OneTree tree;
    double lambda = root ? 2.0 : 1.0;
    std::size_t stall = 0;
    const std::size_t period = std::max<std::size_t>(5, iterations / 10);
    for (std::size_t it = 0; it < iterations; ++it) {
      if (!one_tree(node.state, penalty, tree)) return false;
      if (tree.bound > best.bound) {
        best = tree;
        node.penalty = penalty;
        stall = 0;
      } else if (++stall >= period) {
        lambda /= 2.0;
        stall = 0;
      }
      if (best.bound >= best_cost_ - tolerance()) return false;
      double norm2 = 0.0;
      for (int g : tree.degree) norm2 += static_cast<double>((g - 2) * (g - 2));
      if (norm2 == 0.0) {
        record_tour(tree);
        return false;
      }
      const double step = lambda * (best_cost_ - tree.bound) / norm2;
      for (std::size_t i = 0; i < n_; ++i) {
        penalty[i] += step * static_cast<double>(tree.degree[i] - 2);
      }
      if (lambda < 1e-6) break;
    }
    return true;
  }

  void search(Node node, std::size_t iterations, bool root) {
    OneTree tree;
    if (!bound(node, iterations, root, tree)) return;

    // Branch at the highest-degree node of the best 1-tree.
    std::size_t pivot = n_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (tree.degree[i] > 2 && (pivot == n_ || tree.degree[i] > tree.degree[pivot])) {
        pivot = i;
      }
    }
    std::vector<std::size_t> free_nbrs;
    for (const auto& [a, b] : tree.edges) {
      if (a != pivot && b != pivot) continue;
      const std::size_t other = a == pivot ? b : a;
      if (get(node.state, pivot, other) == kFree) free_nbrs.push_back(other);
    }
    std::size_t included = 0;
    for (std::size_t j = 0; j < n_; ++j) {
      included += j != pivot && get(node.state, pivot, j) == kIncluded;
    }
    // Costlier edges first: excluding them raises the bound the most.
    std::sort(free_nbrs.begin(), free_nbrs.end(), [&](std::size_t x, std::size_t y) {
      const double wx = m_(pivot, x), wy = m_(pivot, y);
      return wx > wy || (wx == wy && x < y);
    });

    const std::size_t e1 = free_nbrs.at(0);
    auto child = [&](auto&& edit) {
      Node c = node;
      edit(c.state);
      if (propagate(c.state)) search(std::move(c), child_iterations(), false);
    };
    child([&](auto& s) { set(s, pivot, e1, kExcluded); });
    if (included == 1 || free_nbrs.size() < 2) {
      child([&](auto& s) { set(s, pivot, e1, kIncluded); });
      return;
    }
    const std::size_t e2 = free_nbrs[1];
    child([&](auto& s) {
      set(s, pivot, e1, kIncluded);
      set(s, pivot, e2, kExcluded);
    });
    child([&](auto& s) {
      set(s, pivot, e1, kIncluded);
      set(s, pivot, e2, kIncluded);
    });
  }

  const DistanceMatrix& m_;
  std::size_t n_;
  std::vector<std::size_t> best_order_;
  double best_cost_ = kInf;
};

std::vector<std::size_t> exact_fixed_endpoints(const DistanceMatrix& m) {
  const std::size_t n = m.size();
  if (n <= 3) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    return order;
  }
  return TourSearch(m).run();
}

}  // namespace

PathPlan solve_valid_path(const DistanceMatrix& m, const SolverOptions& options) {
  const std::size_t n = m.size();
  if (n < 2) throw Infeasible("planning needs at least 2 cells");
  if (n > options.exact_cap) throw SizeLimitExceeded(n, options.exact_cap);

  PathPlan plan;
  plan.mode = PlanMode::kValid;
  plan.optimal = true;
  if (!options.free_endpoints) {
    plan.order = exact_fixed_endpoints(m);
    plan.t_cov = coverage_time(plan.order, m);
    return plan;
  }

  // A path and its reverse cost the same, so unordered pairs suffice.
  plan.t_cov = kInf;
  std::vector<std::size_t> perm;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t e = s + 1; e < n; ++e) {
      perm.clear();
      perm.push_back(s);
      for (std::size_t i = 0; i < n; ++i) {
        if (i != s && i != e) perm.push_back(i);
      }
      perm.push_back(e);
      std::vector<std::size_t> local = exact_fixed_endpoints(m.permuted(perm));
      for (std::size_t& k : local) k = perm[k];
      const double t = coverage_time(local, m);
      if (t < plan.t_cov - 1e-12) {
        plan.t_cov = t;
        plan.order = std::move(local);
      }
    }
  }
  return plan;
}

}  // namespace covgrid
