#ifndef SHARPCSP_TENSOR_H_
#define SHARPCSP_TENSOR_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "sharpcsp/scalar.h"

namespace sharpcsp {

// q^n, throwing std::overflow_error past size_t.
std::size_t checked_power(std::size_t base, std::size_t exponent);

// Base-q index of a tuple with x[0] most significant. Digits are 0-based.
std::size_t tuple_index(std::span<const int> x, int q);
// Inverse of tuple_index; writes digits.size() digits, most significant first.
void index_to_tuple(std::size_t index, int q, std::span<int> digits);

// Dense n-ary function [q]^n -> Q(i). Entries are row-major with the first
// argument most significant; domain elements are 0-based.
class ConstraintFunction {
 public:
  ConstraintFunction() = default;
  ConstraintFunction(int q, int arity, std::vector<Scalar> entries);

  static ConstraintFunction equality(int q, int arity);
  static ConstraintFunction constant(int q, int arity, const Scalar& value);
  static ConstraintFunction generate(
      int q, int arity, const std::function<Scalar(std::span<const int>)>& f);

  int domain_size() const { return q_; }
  int arity() const { return arity_; }
  std::size_t size() const { return entries_.size(); }

  // Throws std::invalid_argument on arity mismatch or out-of-range element.
  const Scalar& evaluate(std::span<const int> x) const;
  const Scalar& operator()(std::span<const int> x) const {
    return entries_[tuple_index(x, q_)];
  }
  const Scalar& operator[](std::size_t index) const { return entries_[index]; }
  const std::vector<Scalar>& entries() const { return entries_; }

  ConstraintFunction conjugate() const;
  bool is_zero() const;

  friend bool operator==(const ConstraintFunction&,
                         const ConstraintFunction&) = default;

 private:
  int q_ = 1;
  int arity_ = 1;
  std::vector<Scalar> entries_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Scalar& operator()(std::size_t r, std::size_t c) {
    return entries_[r * cols_ + c];
  }
  const Scalar& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  const std::vector<Scalar>& entries() const { return entries_; }

  Matrix operator*(const Matrix& other) const;
  Matrix kronecker(const Matrix& other) const;
  Matrix adjoint() const;  // conjugate transpose
  Matrix transpose() const;
  bool is_zero() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> entries_;
};

// F^{m,d}: row index is base-q of (x_1..x_m), column index is base-q of
// (x_n, ..., x_{m+1}) so that x_{m+1} is the least significant column digit.
Matrix flatten(const ConstraintFunction& f, int m, int d);
// Inverse of flatten. Requires m + d >= 1.
ConstraintFunction unflatten(const Matrix& matrix, int q, int m, int d);

// E^{m,d}: flattening of the (m+d)-ary equality. E^{0,0} is the 1x1 matrix
// (q), matching a degree-zero equality vertex.
Matrix equality_matrix(int q, int m, int d);

// M with M[x][z] = prod_i [x_i = z_{sigma(i)}], sigma 0-based on k strands.
Matrix strand_permutation_matrix(int q, std::span<const int> sigma);

}  // namespace sharpcsp

#endif  // SHARPCSP_TENSOR_H_
