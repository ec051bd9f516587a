#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "prymker/scalar.hpp"

namespace prymker {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over Q(zeta_N).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);
  /// Matrix whose rows are the given vectors (all of equal length).
  static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);
  /// Matrix whose columns are the given vectors.
  static Matrix from_columns(const std::vector<Vector>& cols, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  Vector col(std::size_t c) const;

  Matrix transpose() const;
  Matrix operator*(const Matrix& other) const;
  Vector operator*(const Vector& v) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Result of fraction-free (Bareiss) forward elimination followed by
/// normalisation to reduced row echelon form.
struct Echelon {
  Matrix reduced;                    // RREF; first `rank` rows are nonzero
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank() const noexcept { return pivots.size(); }
};

/// Deterministic: the pivot in each column is the first nonzero entry at or
/// below the current row; no magnitude-based pivoting.
Echelon row_echelon(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Basis of {v : M v = 0}.  One vector per free column f, with v_f = 1, other
/// free coordinates 0 and pivot coordinates read off the RREF.  Checks
/// rank-nullity before returning.
std::vector<Vector> kernel_basis(const Matrix& m);

/// Unique solution of a square nonsingular system; throws DivisionByZero when
/// the matrix is singular.
Vector solve(const Matrix& m, const Vector& rhs);

/// Some solution of M x = rhs, or false when the system is inconsistent.
bool solve_any(const Matrix& m, const Vector& rhs, Vector& out);

Matrix inverse(const Matrix& m);

/// rank of the span of a family of vectors of a common length.
std::size_t span_rank(const std::vector<Vector>& vectors, std::size_t length);

/// Whether span(a) == span(b).
bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t length);

bool is_zero(const Vector& v);
Vector scaled(const Vector& v, const Scalar& s);
Vector add(const Vector& a, const Vector& b);
Scalar dot(const Vector& a, const Vector& b);
Vector zero_vector(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
/// "[a, b, c]" with scalar strings.
std::string format_vector(const Vector& v);
/// Whether a and b are nonzero multiples of one another.
bool proportional(const Vector& a, const Vector& b);

}  // namespace prymker
