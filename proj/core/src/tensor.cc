#include "sharpcsp/tensor.h"

#include <limits>
#include <stdexcept>
#include <string>

namespace sharpcsp {

std::size_t checked_power(std::size_t base, std::size_t exponent) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && out > std::numeric_limits<std::size_t>::max() / base) {
      throw std::overflow_error("power overflows size_t");
    }
    out *= base;
  }
  return out;
}

std::size_t tuple_index(std::span<const int> x, int q) {
  std::size_t index = 0;
  for (int v : x) index = index * static_cast<std::size_t>(q) + v;
  return index;
}

void index_to_tuple(std::size_t index, int q, std::span<int> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<int>(index % q);
    index /= q;
  }
}

ConstraintFunction::ConstraintFunction(int q, int arity,
                                       std::vector<Scalar> entries)
    : q_(q), arity_(arity), entries_(std::move(entries)) {
  if (q < 1) throw std::invalid_argument("domain size must be >= 1");
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  if (entries_.size() != checked_power(q, arity)) {
    throw std::invalid_argument(
        "expected " + std::to_string(checked_power(q, arity)) +
        " entries, got " + std::to_string(entries_.size()));
  }
}

ConstraintFunction ConstraintFunction::equality(int q, int arity) {
  return generate(q, arity, [](std::span<const int> x) {
    for (int v : x) {
      if (v != x[0]) return Scalar(0);
    }
    return Scalar(1);
  });
}

ConstraintFunction ConstraintFunction::constant(int q, int arity,
                                                const Scalar& value) {
  return ConstraintFunction(
      q, arity, std::vector<Scalar>(checked_power(q, arity), value));
}

ConstraintFunction ConstraintFunction::generate(
    int q, int arity, const std::function<Scalar(std::span<const int>)>& f) {
  if (q < 1 || arity < 1) {
    throw std::invalid_argument("domain size and arity must be >= 1");
  }
  const std::size_t n = checked_power(q, arity);
  std::vector<Scalar> entries;
  entries.reserve(n);
  std::vector<int> x(arity);
  for (std::size_t i = 0; i < n; ++i) {
    index_to_tuple(i, q, x);
    entries.push_back(f(x));
  }
  return ConstraintFunction(q, arity, std::move(entries));
}

const Scalar& ConstraintFunction::evaluate(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != arity_) {
    throw std::invalid_argument("expected " + std::to_string(arity_) +
                                " arguments, got " + std::to_string(x.size()));
  }
  for (int v : x) {
    if (v < 0 || v >= q_) {
      throw std::out_of_range("domain element " + std::to_string(v + 1) +
                              " outside [" + std::to_string(q_) + "]");
    }
  }
  return entries_[tuple_index(x, q_)];
}

ConstraintFunction ConstraintFunction::conjugate() const {
  std::vector<Scalar> out;
  out.reserve(entries_.size());
  for (const Scalar& s : entries_) out.push_back(s.conj());
  return ConstraintFunction(q_, arity_, std::move(out));
}

bool ConstraintFunction::is_zero() const {
  for (const Scalar& s : entries_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) {
    throw std::invalid_argument("matrix entry count mismatch");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) {
    throw std::invalid_argument("matrix product dimension mismatch");
  }
  Matrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        const Scalar& b = other(k, j);
        if (!b.is_zero()) out(i, j) += a * b;
      }
    }
  }
  return out;
}

Matrix Matrix::kronecker(const Matrix& other) const {
  Matrix out(rows_ * other.rows_, cols_ * other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      const Scalar& a = (*this)(i, j);
      if (a.is_zero()) continue;
      for (std::size_t k = 0; k < other.rows_; ++k) {
        for (std::size_t l = 0; l < other.cols_; ++l) {
          out(i * other.rows_ + k, j * other.cols_ + l) = a * other(k, l);
        }
      }
    }
  }
  return out;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).conj();
  }
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool Matrix::is_zero() const {
  for (const Scalar& s : entries_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Matrix flatten(const ConstraintFunction& f, int m, int d) {
  if (m < 0 || d < 0 || m + d != f.arity()) {
    throw std::invalid_argument("flatten split " + std::to_string(m) + "+" +
                                std::to_string(d) + " does not match arity " +
                                std::to_string(f.arity()));
  }
  const int q = f.domain_size();
  const std::size_t rows = checked_power(q, m);
  const std::size_t cols = checked_power(q, d);
  Matrix out(rows, cols);
  std::vector<int> x(f.arity());
  for (std::size_t i = 0; i < f.size(); ++i) {
    index_to_tuple(i, q, x);
    std::size_t r = tuple_index(std::span<const int>(x).first(m), q);
    std::size_t c = 0;
    for (int p = f.arity() - 1; p >= m; --p) c = c * q + x[p];
    out(r, c) = f[i];
  }
  return out;
}

ConstraintFunction unflatten(const Matrix& matrix, int q, int m, int d) {
  if (m < 0 || d < 0 || m + d < 1) {
    throw std::invalid_argument("unflatten needs m + d >= 1");
  }
  if (matrix.rows() != checked_power(q, m) ||
      matrix.cols() != checked_power(q, d)) {
    throw std::invalid_argument("unflatten dimension mismatch");
  }
  return ConstraintFunction::generate(q, m + d, [&](std::span<const int> x) {
    std::size_t r = tuple_index(x.first(m), q);
    std::size_t c = 0;
    for (int p = m + d - 1; p >= m; --p) c = c * q + x[p];
    return matrix(r, c);
  });
}

Matrix equality_matrix(int q, int m, int d) {
  if (m + d == 0) return Matrix(1, 1, {Scalar(q)});
  return flatten(ConstraintFunction::equality(q, m + d), m, d);
}

Matrix strand_permutation_matrix(int q, std::span<const int> sigma) {
  const int k = static_cast<int>(sigma.size());
  const std::size_t n = checked_power(q, k);
  Matrix out(n, n);
  std::vector<int> x(k);
  std::vector<int> z(k);
  for (std::size_t r = 0; r < n; ++r) {
    index_to_tuple(r, q, x);
    for (int i = 0; i < k; ++i) z[sigma[i]] = x[i];
    out(r, tuple_index(z, q)) = 1;
  }
  return out;
}

}  // namespace sharpcsp
