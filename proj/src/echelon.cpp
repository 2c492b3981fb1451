#include "ellassoc/echelon.hpp"

#include <algorithm>

namespace ellassoc {

Echelon::Echelon(int columns) : pivot_row_(static_cast<std::size_t>(columns), -1) {}

void Echelon::reduce(SparseVec& v) const {
  auto it = v.end();
  while (it != v.begin()) {
    --it;
    const int c = it->first;
    const int r = pivot_row_[c];
    if (r < 0) continue;
    const Rational f = it->second;
    it = v.erase(it);
    // Row entries other than the pivot lie strictly below c, so `it` stays valid.
    for (const auto& [col, val] : rows_[r]) {
      if (col == c) continue;
      auto [jt, inserted] = v.try_emplace(col, 0);
      jt->second -= f * val;
      if (jt->second == 0) v.erase(jt);
    }
  }
}

bool Echelon::insert(SparseVec v) {
  reduce(v);
  if (v.empty()) return false;
  const int pivot = v.rbegin()->first;
  const Rational lead = v.rbegin()->second;
  if (lead != 1)
    for (auto& [col, val] : v) val /= lead;
  pivot_row_[pivot] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

void Echelon::interreduce() {
  for (int c : pivot_columns()) {
    SparseVec& row = rows_[pivot_row_[c]];
    SparseVec tail = row;
    tail.erase(c);
    reduce(tail);
    tail.emplace(c, 1);
    row = std::move(tail);
  }
}

std::vector<int> Echelon::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < columns(); ++c)
    if (pivot_row_[c] < 0) out.push_back(c);
  return out;
}

std::vector<int> Echelon::pivot_columns() const {
  std::vector<int> out;
  for (int c = 0; c < columns(); ++c)
    if (pivot_row_[c] >= 0) out.push_back(c);
  return out;
}

}  // namespace ellassoc
