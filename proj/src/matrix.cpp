#include "prymker/matrix.hpp"

#include <cassert>
#include <utility>

namespace prymker {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged row in from_rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "ragged column in from_columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::col(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::operator*(const Matrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        if (!other(k, j).is_zero()) p(i, j) += a * other(k, j);
    }
  return p;
}

Vector Matrix::operator*(const Vector& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k)
      if (!v[k].is_zero() && !(*this)(i, k).is_zero()) out[i] += (*this)(i, k) * v[k];
  return out;
}

Echelon row_echelon(const Matrix& input) {
  Matrix a = input;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::vector<std::size_t> pivots;
  Scalar prev(1);
  std::size_t r = 0;
  // Bareiss forward sweep: every update divides exactly by the previous pivot.
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
    const Scalar piv = a(r, c);
    const Scalar prev_inv = prev.inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Scalar f = a(i, c);
      for (std::size_t j = c + 1; j < cols; ++j) {
        Scalar v = piv * a(i, j);
        if (!f.is_zero() && !a(r, j).is_zero()) v -= f * a(r, j);
        if (!prev.is_one()) v *= prev_inv;
        a(i, j) = std::move(v);
      }
      a(i, c) = Scalar(0);
    }
    prev = piv;
    pivots.push_back(c);
    ++r;
  }
  // Normalise pivots to 1 and clear above them.
  for (std::size_t k = pivots.size(); k-- > 0;) {
    const std::size_t c = pivots[k];
    const Scalar inv = a(k, c).inverse();
    for (std::size_t j = c; j < cols; ++j)
      if (!a(k, j).is_zero()) a(k, j) *= inv;
    for (std::size_t i = 0; i < k; ++i) {
      const Scalar f = a(i, c);
      if (f.is_zero()) continue;
      for (std::size_t j = c; j < cols; ++j)
        if (!a(k, j).is_zero()) a(i, j) -= f * a(k, j);
    }
  }
  return Echelon{std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return row_echelon(m).rank(); }

std::vector<Vector> kernel_basis(const Matrix& m) {
  const Echelon e = row_echelon(m);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : e.pivots) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = Scalar(1);
    for (std::size_t k = 0; k < e.pivots.size(); ++k) v[e.pivots[k]] = -e.reduced(k, f);
    basis.push_back(std::move(v));
  }
  if (basis.size() + e.rank() != cols)
    throw Error(ErrorCode::DimensionMismatch, "rank-nullity failed in kernel_basis");
  return basis;
}

bool solve_any(const Matrix& m, const Vector& rhs, Vector& out) {
  if (rhs.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "rhs length mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const Echelon e = row_echelon(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return false;
  out.assign(m.cols(), Scalar(0));
  for (std::size_t k = 0; k < e.pivots.size(); ++k) out[e.pivots[k]] = e.reduced(k, m.cols());
  return true;
}

Vector solve(const Matrix& m, const Vector& rhs) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "solve needs a square matrix");
  if (rank(m) != m.cols()) throw Error(ErrorCode::DivisionByZero, "singular system");
  Vector out;
  solve_any(m, rhs, out);
  return out;
}

Matrix inverse(const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorCode::DimensionMismatch, "inverse needs a square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Scalar(1);
  }
  const Echelon e = row_echelon(aug);
  if (e.rank() < n || e.pivots[n - 1] != n - 1) throw Error(ErrorCode::DivisionByZero, "singular matrix");
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.reduced(i, n + j);
  return inv;
}

std::size_t span_rank(const std::vector<Vector>& vectors, std::size_t length) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_rows(vectors, length));
}

bool same_span(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t length) {
  const std::size_t ra = span_rank(a, length);
  if (ra != span_rank(b, length)) return false;
  std::vector<Vector> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return span_rank(both, length) == ra;
}

bool is_zero(const Vector& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vector scaled(const Vector& v, const Scalar& s) {
  Vector out = v;
  for (auto& x : out) x *= s;
  return out;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Scalar dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  Scalar s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  return s;
}

Vector zero_vector(std::size_t n) { return Vector(n); }

Vector unit_vector(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

std::string format_vector(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + "]";
}

bool proportional(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || is_zero(a) || is_zero(b)) return false;
  return span_rank({a, b}, a.size()) == 1;
}

}  // namespace prymker
