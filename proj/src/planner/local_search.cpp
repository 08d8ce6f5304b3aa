#include "local_search.hpp"

#include <algorithm>

namespace covgrid::detail {

namespace {
constexpr double kMinGain = 1e-10;
}

double path_length(const std::vector<std::size_t>& order,
                   const DistanceMatrix& m) {
  double total = 0.0;
  for (std::size_t k = 1; k < order.size(); ++k) {
    total += m(order[k - 1], order[k]);
  }
  return total;
}

std::vector<std::size_t> nearest_neighbor_path(const DistanceMatrix& m,
                                               std::size_t start,
                                               std::size_t end) {
  const std::size_t n = m.size();
  std::vector<unsigned char> used(n, 0);
  std::vector<std::size_t> order{start};
  used[start] = 1;
  used[end] = 1;
  std::size_t cur = start;
  while (order.size() + 1 < n) {
    std::size_t best = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (!used[j] && (best == n || m(cur, j) < m(cur, best))) best = j;
    }
    used[best] = 1;
    order.push_back(best);
    cur = best;
  }
  if (end != start) order.push_back(end);
  return order;
}

void two_opt(std::vector<std::size_t>& order, const DistanceMatrix& m) {
  const std::size_t n = order.size();
  if (n < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 3 < n; ++i) {
      for (std::size_t j = i + 2; j + 1 < n; ++j) {
        const std::size_t a = order[i], b = order[i + 1];
        const std::size_t c = order[j], d = order[j + 1];
        const double gain = m(a, b) + m(c, d) - m(a, c) - m(b, d);
        if (gain > kMinGain) {
          std::reverse(order.begin() + static_cast<long>(i) + 1,
                       order.begin() + static_cast<long>(j) + 1);
          improved = true;
        }
      }
    }
  }
}

void or_opt(std::vector<std::size_t>& order, const DistanceMatrix& m) {
  const std::size_t n = order.size();
  if (n < 4) return;
  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t len = 1; len <= 3 && !improved; ++len) {
      // Segment order[i .. i+len-1], never touching the pinned endpoints.
      for (std::size_t i = 1; i + len < n && !improved; ++i) {
        const std::size_t prev = order[i - 1];
        const std::size_t first = order[i];
        const std::size_t last = order[i + len - 1];
        const std::size_t next = order[i + len];
        const double removed = m(prev, first) + m(last, next) - m(prev, next);
        for (std::size_t k = 0; k + 1 < n; ++k) {
          // Insert between order[k] and order[k+1], outside the segment.
          if (k + 1 >= i && k < i + len) continue;
          const std::size_t a = order[k], b = order[k + 1];
          const double forward = m(a, first) + m(last, b) - m(a, b);
          const double backward = m(a, last) + m(first, b) - m(a, b);
          const bool reverse = backward < forward;
          const double added = reverse ? backward : forward;
          if (removed - added > kMinGain) {
            std::vector<std::size_t> seg(order.begin() + static_cast<long>(i),
                                         order.begin() +
                                             static_cast<long>(i + len));
            if (reverse) std::reverse(seg.begin(), seg.end());
            std::vector<std::size_t> rest;
            rest.reserve(n);
            for (std::size_t q = 0; q < n; ++q) {
              if (q < i || q >= i + len) rest.push_back(order[q]);
            }
            // Position of `a` in `rest`.
            const std::size_t pos = k < i ? k : k - len;
            rest.insert(rest.begin() + static_cast<long>(pos) + 1, seg.begin(),
                        seg.end());
            order = std::move(rest);
            improved = true;
            break;
          }
        }
      }
    }
  }
}

}  // namespace covgrid::detail
