#pragma once

#include <cstddef>
#include <vector>

namespace covgrid::detail {

// Square min-cost assignment solved by successive shortest augmenting paths
// (Hungarian method with potentials). Arcs can be forbidden after a solve;
// `repair` then re-augments only the rows that lost their column, which is
// what makes branch-and-bound over forbidden arcs cheap.
class Assignment {
 public:
  // `cost` is row-major size x size.
  Assignment(std::size_t size, const std::vector<double>* cost);

  std::size_t size() const { return n_; }
  bool allowed(std::size_t row, std::size_t col) const {
    return !forbidden_[row * n_ + col];
  }

  // Forbids an arc; if it was in the current assignment the row becomes
  // unassigned until the next repair().
  void forbid(std::size_t row, std::size_t col);

  // Augments every unassigned row. Returns false if no perfect assignment
  // over the allowed arcs exists.
  bool repair();

  // Column assigned to each row; valid after a successful repair().
  std::vector<std::size_t> row_to_col() const;
  double value() const;

 private:
  bool augment(std::size_t row);  // 1-based row

  std::size_t n_;
  const std::vector<double>* cost_;
  std::vector<unsigned char> forbidden_;
  // 1-based, index 0 is the sentinel of the classic formulation.
  std::vector<double> u_, v_;
  std::vector<std::size_t> col_owner_;  // column -> row, 0 = free
  std::vector<std::size_t> pending_;    // rows awaiting augmentation
};

}  // namespace covgrid::detail
