#ifndef SHARPCSP_LINALG_H_
#define SHARPCSP_LINALG_H_

#include <cstddef>
#include <vector>

#include "sharpcsp/scalar.h"
#include "sharpcsp/tensor.h"

namespace sharpcsp {

// Incrementally maintained row space in echelon form, exact arithmetic.
class RowSpace {
 public:
  explicit RowSpace(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return rows_.size(); }

  // Adds v; returns true iff it increased the rank.
  bool add(const std::vector<Scalar>& v);
  bool contains(const std::vector<Scalar>& v) const;

 private:
  std::vector<Scalar> reduce(std::vector<Scalar> v) const;

  std::size_t dimension_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::size_t> pivots_;
};

std::size_t rank(const Matrix& m);

// Basis of {x : m x = 0}.
std::vector<std::vector<Scalar>> nullspace(const Matrix& m);

}  // namespace sharpcsp

#endif  // SHARPCSP_LINALG_H_
