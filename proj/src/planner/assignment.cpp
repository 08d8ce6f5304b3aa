#include "assignment.hpp"

#include <limits>

namespace covgrid::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Assignment::Assignment(std::size_t size, const std::vector<double>* cost)
    : n_(size),
      cost_(cost),
      forbidden_(size * size, 0),
      u_(size + 1, 0.0),
      v_(size + 1, 0.0),
      col_owner_(size + 1, 0) {
  for (std::size_t i = 1; i <= n_; ++i) pending_.push_back(i);
}

void Assignment::forbid(std::size_t row, std::size_t col) {
  forbidden_[row * n_ + col] = 1;
  if (col_owner_[col + 1] == row + 1) {
    col_owner_[col + 1] = 0;
    pending_.push_back(row + 1);
  }
}

bool Assignment::repair() {
  while (!pending_.empty()) {
    const std::size_t row = pending_.back();
    pending_.pop_back();
    if (!augment(row)) {
      pending_.push_back(row);
      return false;
    }
  }
  return true;
}

bool Assignment::augment(std::size_t row) {
  const std::vector<double>& c = *cost_;
  std::vector<double> min_slack(n_ + 1, kInf);
  std::vector<std::size_t> way(n_ + 1, 0);
  std::vector<unsigned char> used(n_ + 1, 0);
  col_owner_[0] = row;
  std::size_t j0 = 0;
  do {
    used[j0] = 1;
    const std::size_t i0 = col_owner_[j0];
    double delta = kInf;
    std::size_t j1 = 0;
    for (std::size_t j = 1; j <= n_; ++j) {
      if (used[j]) continue;
      if (!forbidden_[(i0 - 1) * n_ + (j - 1)]) {
        const double cur = c[(i0 - 1) * n_ + (j - 1)] - u_[i0] - v_[j];
        if (cur < min_slack[j]) {
          min_slack[j] = cur;
          way[j] = j0;
        }
      }
      if (min_slack[j] < delta) {
        delta = min_slack[j];
        j1 = j;
      }
    }
    if (j1 == 0) {
      col_owner_[0] = 0;
      return false;
    }
    for (std::size_t j = 0; j <= n_; ++j) {
      if (used[j]) {
        u_[col_owner_[j]] += delta;
        v_[j] -= delta;
      } else {
        min_slack[j] -= delta;
      }
    }
    j0 = j1;
  } while (col_owner_[j0] != 0);
  do {
    const std::size_t j1 = way[j0];
    col_owner_[j0] = col_owner_[j1];
    j0 = j1;
  } while (j0 != 0);
  col_owner_[0] = 0;
  return true;
}

std::vector<std::size_t> Assignment::row_to_col() const {
  std::vector<std::size_t> out(n_, 0);
  for (std::size_t j = 1; j <= n_; ++j) {
    if (col_owner_[j] != 0) out[col_owner_[j] - 1] = j - 1;
  }
  return out;
}

double Assignment::value() const {
  double total = 0.0;
  for (std::size_t j = 1; j <= n_; ++j) {
    if (col_owner_[j] != 0) total += (*cost_)[(col_owner_[j] - 1) * n_ + (j - 1)];
  }
  return total;
}

}  // namespace covgrid::detail
