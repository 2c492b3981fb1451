#pragma once

#include <vector>

#include "ellassoc/rational.hpp"

namespace ellassoc {

// Exact sparse row echelon form over Q. The pivot of a row is its largest
// column; pivot entries are normalized to 1.
class Echelon {
 public:
  explicit Echelon(int columns = 0);

  int columns() const { return static_cast<int>(pivot_row_.size()); }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Reduces `v` and keeps the remainder as a new row. Returns whether the rank grew.
  bool insert(SparseVec v);

  // Fully reduces `v` modulo the row space; the result has no pivot columns.
  void reduce(SparseVec& v) const;

  // Clears every non-pivot entry of each row that sits on another pivot,
  // so that `normal_form` becomes a lookup.
  void interreduce();

  bool is_pivot(int column) const { return pivot_row_[column] >= 0; }
  const SparseVec& pivot_row(int column) const { return rows_[pivot_row_[column]]; }
  const std::vector<SparseVec>& rows() const { return rows_; }
  std::vector<int> free_columns() const;
  std::vector<int> pivot_columns() const;

 private:
  std::vector<int> pivot_row_;
  std::vector<SparseVec> rows_;
};

}  // namespace ellassoc
