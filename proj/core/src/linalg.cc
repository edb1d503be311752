#include "sharpcsp/linalg.h"

#include <stdexcept>

namespace sharpcsp {

std::vector<Scalar> RowSpace::reduce(std::vector<Scalar> v) const {
  if (v.size() != dimension_) {
    throw std::invalid_argument("vector dimension mismatch");
  }
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Scalar c = v[pivots_[i]];
    if (c.is_zero()) continue;
    const auto& row = rows_[i];
    for (std::size_t j = pivots_[i]; j < dimension_; ++j) {
      if (!row[j].is_zero()) v[j] -= c * row[j];
    }
  }
  return v;
}

bool RowSpace::add(const std::vector<Scalar>& v) {
  std::vector<Scalar> r = reduce(v);
  std::size_t pivot = 0;
  while (pivot < dimension_ && r[pivot].is_zero()) ++pivot;
  if (pivot == dimension_) return false;
  const Scalar inv = Scalar(1) / r[pivot];
  for (std::size_t j = pivot; j < dimension_; ++j) {
    if (!r[j].is_zero()) r[j] *= inv;
  }
  rows_.push_back(std::move(r));
  pivots_.push_back(pivot);
  return true;
}

bool RowSpace::contains(const std::vector<Scalar>& v) const {
  for (const Scalar& s : reduce(v)) {
    if (!s.is_zero()) return false;
  }
  return true;
}

std::size_t rank(const Matrix& m) {
  RowSpace space(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    space.add(std::vector<Scalar>(m.entries().begin() + i * m.cols(),
                                  m.entries().begin() + (i + 1) * m.cols()));
  }
  return space.rank();
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& m) {
  // Reduced row echelon form, then one basis vector per free column.
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::vector<std::vector<Scalar>> a(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    a[i].assign(m.entries().begin() + i * cols,
                m.entries().begin() + (i + 1) * cols);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    const Scalar inv = Scalar(1) / a[r][c];
    for (auto& s : a[r]) s *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Scalar f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace sharpcsp
