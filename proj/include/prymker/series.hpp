#pragma once

#include <map>
#include <utility>
#include <vector>

#include "prymker/scalar.hpp"

namespace prymker {

/// A truncated Laurent series  sum_{e >= v} c_e z^e + O(z^prec).
///
/// Coefficients are known exactly for exponents below `precision()`; every
/// arithmetic result carries the precision that is actually justified by its
/// operands.  Polynomials built by the library are "exact" (precision
/// kExact) and never limit a result.
class TruncatedSeries {
 public:
  static constexpr int kExact = 1 << 28;

  /// The exact zero series.
  TruncatedSeries();

  static TruncatedSeries zero(int prec);
  static TruncatedSeries constant(const Scalar& c, int prec = kExact);
  static TruncatedSeries monomial(const Scalar& c, int exponent, int prec = kExact);
  /// Coefficients for exponents valuation, valuation+1, ...; any entries at
  /// or beyond `prec` are dropped.
  static TruncatedSeries from_coefficients(int valuation, std::vector<Scalar> coeffs, int prec);
  static TruncatedSeries polynomial(std::vector<Scalar> coeffs, int prec = kExact);

  /// For the zero series this equals precision().
  int valuation() const noexcept { return val_; }
  int precision() const noexcept { return prec_; }
  bool is_exact() const noexcept { return prec_ >= kExact / 2; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// Coefficient at exponent e; InsufficientPrecision when e >= precision().
  Scalar coeff(int e) const;
  Scalar leading() const;
  /// Coefficients from the valuation on, with trailing zeros omitted.
  const std::vector<Scalar>& stored() const noexcept { return c_; }

  TruncatedSeries operator-() const;
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  /// Division; throws DivisionByZero when b is the zero series.
  friend TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const Scalar& s);
  friend TruncatedSeries operator*(const Scalar& s, const TruncatedSeries& a) { return a * s; }

  TruncatedSeries truncated(int prec) const;
  /// Declares every unknown coefficient below `prec` to be zero.  Only
  /// meaningful inside iterative solvers that overwrite those coefficients.
  TruncatedSeries padded(int prec) const;
  /// Multiplication by z^k.
  TruncatedSeries shifted(int k) const;
  TruncatedSeries derivative() const;
  TruncatedSeries inverse() const;
  TruncatedSeries pow(int n) const;
  /// this(g(z)); g must have positive valuation.
  TruncatedSeries compose(const TruncatedSeries& g) const;
  /// this(z^n).
  TruncatedSeries substitute_power(int n) const;
  /// this(c z).
  TruncatedSeries scale_variable(const Scalar& c) const;

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

  std::string to_string() const;

 private:
  TruncatedSeries(int val, std::vector<Scalar> coeffs, int prec);
  TruncatedSeries inverse_to(int relative_prec) const;
  void normalize();

  int val_;
  int prec_;
  std::vector<Scalar> c_;
};

/// Coefficient of z^-1; 0 when the valuation is >= 0.  InsufficientPrecision
/// if exponent -1 is outside the known window.
Scalar residue(const TruncatedSeries& f);

/// g with g^n = f.  The leading coefficient of g is the designated rational
/// n-th root of the leading coefficient of f.
TruncatedSeries nth_root(const TruncatedSeries& f, int n);

/// F(z, y) = sum c_ij z^i y^j.
class BivariatePolynomial {
 public:
  void add_term(int z_exp, int y_exp, const Scalar& c);
  TruncatedSeries evaluate(const TruncatedSeries& y) const;
  BivariatePolynomial derivative_y() const;
  const std::map<std::pair<int, int>, Scalar>& terms() const noexcept { return terms_; }

 private:
  std::map<std::pair<int, int>, Scalar> terms_;
};

/// Series root of F(z, y) = 0 lifted from `seed` by Newton iteration, doubling
/// the precision on each step up to `target_prec`.  When `iterates` is given,
/// every intermediate approximation is appended to it.
TruncatedSeries newton_solve(const BivariatePolynomial& F, const TruncatedSeries& seed, int target_prec,
                             std::vector<TruncatedSeries>* iterates = nullptr);

/// Compositional inverse of a series of valuation exactly 1.
TruncatedSeries reversion(const TruncatedSeries& f);

}  // namespace prymker
