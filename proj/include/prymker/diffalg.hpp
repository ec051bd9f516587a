#pragma once

#include <cstddef>
#include <vector>

#include "prymker/covering.hpp"

namespace prymker {

/// H0(omega_F) = pi^* H0(omega_E) + H0(omega_F)^-, in coordinates over the
/// basis eta_1..eta_g of the datum.
struct TraceSplit {
  Vector tau;                       // tau_i = sum_k (eta_i / pi^* alpha)(x_k)
  Vector alpha_coords;              // pi^* alpha = sum alpha_coords[i] eta_i
  std::vector<Vector> minus_basis;  // basis of Ker(tau), g - 1 vectors
  Vector qminus;                    // tau / d: kills the minus space, 1 on pi^* alpha
  int degree = 0;
};

TraceSplit trace_split(const CoveringDatum& datum);

std::size_t sym2_dimension(std::size_t g);
/// Position of eta_i (.) eta_j (i <= j) in the lexicographic basis.
std::size_t lex_index(std::size_t i, std::size_t j, std::size_t g);
/// The pair (i, j) at a lexicographic position.
std::pair<std::size_t, std::size_t> lex_pair(std::size_t index, std::size_t g);

/// phi in Sym^2(H0(omega_F)), stored as a symmetric matrix over the eta basis
/// so that m(phi) = sum_{i,j} phi_ij eta_i eta_j.  Lexicographic coordinates
/// c_ij (i <= j) are the coefficients of eta_i eta_j in m(phi), so c_ii =
/// phi_ii and c_ij = 2 phi_ij.
class SymSquareElement {
 public:
  SymSquareElement() = default;
  explicit SymSquareElement(std::size_t g) : phi_(g, g) {}
  /// Requires a symmetric matrix.
  static SymSquareElement from_matrix(const Matrix& phi);
  static SymSquareElement from_lex(const Vector& coords, std::size_t g);
  /// a (.) b, whose image under m is the product of the two forms.
  static SymSquareElement product(const Vector& a, const Vector& b);

  std::size_t genus() const noexcept { return phi_.rows(); }
  const Matrix& matrix() const noexcept { return phi_; }
  Vector lex() const;
  bool is_zero() const;

  /// The quadric evaluated at a point q of the dual space: q^T phi q.
  Scalar evaluate(const Vector& q) const;
  /// Image under the automorphism whose matrix has rows g^* eta_i: M^T phi M.
  SymSquareElement transformed(const Matrix& action) const;

  friend SymSquareElement operator+(const SymSquareElement& a, const SymSquareElement& b);
  friend SymSquareElement operator-(const SymSquareElement& a, const SymSquareElement& b);
  friend SymSquareElement operator*(const Scalar& s, const SymSquareElement& a);
  friend bool operator==(const SymSquareElement&, const SymSquareElement&) = default;

 private:
  Matrix phi_;
};

/// Every pairwise product eta_i eta_j, precomputed once per datum.
struct ProductTable {
  std::size_t genus = 0;
  std::vector<int> terms;                               // certified coefficients per chart
  std::vector<std::vector<TruncatedSeries>> chart;      // [chart][lex] expansion of eta_i eta_j
  std::vector<Vector> residues;                         // [chart][lex] Res(eta_i eta_j / pi^* alpha)
  std::vector<Vector> fiber;                            // [point][lex] r_ki r_kj
};

/// Builds the table; residues need enough precision of pi^* alpha and the
/// forms (InsufficientPrecision otherwise).
ProductTable product_table(const CoveringDatum& datum);

/// m(phi): one expansion per chart (coefficient of du^2) and one value
/// m(phi) / (pi^* alpha)^2 per fiber point.
struct QuadDifferentialData {
  std::vector<TruncatedSeries> charts;
  Vector fiber;
  /// Whether every certified chart coefficient and fiber value vanishes.
  bool vanishes(const std::vector<int>& terms) const;
};

QuadDifferentialData multiply(const ProductTable& table, const SymSquareElement& phi);

/// Matrix of phi -> (certified chart coefficients, fiber values) on the
/// lexicographic basis of Sym^2; its kernel is the space of quadrics.
Matrix multiplication_matrix(const ProductTable& table);

struct QuadricSpace {
  std::vector<SymSquareElement> basis;
  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Ker(m).  Requires the quadric-precision certificate; the dimension must be
/// (g-2)(g-3)/2, otherwise DimensionMismatch (hyperelliptic or under-resolved).
QuadricSpace quadric_kernel(const CoveringDatum& datum, const ProductTable& table);

/// Lexicographic basis of Sym^2(H0^-): b_a (.) b_b for a <= b.
std::vector<SymSquareElement> minus_sym2_basis(const TraceSplit& split);

/// phi lies in Sym^2 of the minus space iff phi(q^-, .) = 0.
bool in_minus_sym2(const TraceSplit& split, const SymSquareElement& phi);

}  // namespace prymker
