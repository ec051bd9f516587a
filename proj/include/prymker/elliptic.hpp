#pragma once

#include <string>
#include <utility>
#include <vector>

#include "prymker/series.hpp"

namespace prymker {

/// Univariate polynomial, constant term first, no trailing zeros.
using Poly = std::vector<Scalar>;

Poly poly_trim(Poly p);
int poly_degree(const Poly& p);  // -1 for the zero polynomial
Poly poly_add(const Poly& a, const Poly& b);
Poly poly_sub(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Scalar& s);
Scalar poly_eval(const Poly& p, const Scalar& x);
TruncatedSeries poly_eval(const Poly& p, const TruncatedSeries& x);
/// Exact quotient by (x - r); the remainder must vanish.
Poly poly_divide_root(const Poly& p, const Scalar& r);
std::string poly_to_string(const Poly& p, const std::string& var);

/// Rational roots with multiplicity, in increasing order.  All coefficients
/// must be rational.
std::vector<std::pair<mpq_class, int>> rational_roots(const Poly& p);

struct CurvePoint {
  bool at_infinity = false;
  Scalar x, y;
  static CurvePoint infinity() { return CurvePoint{true, Scalar(), Scalar()}; }
  static CurvePoint affine(const Scalar& x, const Scalar& y) { return CurvePoint{false, x, y}; }
  std::string to_string() const;
  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.at_infinity || b.at_infinity) return a.at_infinity == b.at_infinity;
    return a.x == b.x && a.y == b.y;
  }
};

/// y^2 = x^3 + A x + B with 4A^3 + 27B^2 != 0.
class EllipticCurve {
 public:
  EllipticCurve(const Scalar& A, const Scalar& B);
  const Scalar& A() const noexcept { return a_; }
  const Scalar& B() const noexcept { return b_; }
  /// x^3 + A x + B.
  Poly cubic() const;
  bool contains(const CurvePoint& p) const;

  CurvePoint negate(const CurvePoint& p) const;
  CurvePoint add(const CurvePoint& p, const CurvePoint& q) const;

 private:
  Scalar a_, b_;
};

/// P(x) + y Q(x), reduced with y^2 = x^3 + A x + B.
struct CurveFunction {
  Poly P, Q;

  static CurveFunction constant(const Scalar& c) { return {poly_trim({c}), {}}; }
  static CurveFunction x() { return {{Scalar(0), Scalar(1)}, {}}; }
  static CurveFunction y() { return {{}, {Scalar(1)}}; }

  bool is_zero() const { return P.empty() && Q.empty(); }
  bool is_constant() const { return Q.empty() && P.size() <= 1; }
  /// Order of the pole at O: max(2 deg P, 2 deg Q + 3).
  int pole_order() const;
  Scalar evaluate(const CurvePoint& p) const;
  TruncatedSeries expand(const TruncatedSeries& x, const TruncatedSeries& y) const;
  CurveFunction scaled(const Scalar& s) const;
  std::string to_string() const;
  friend bool operator==(const CurveFunction&, const CurveFunction&) = default;
};

CurveFunction multiply(const EllipticCurve& E, const CurveFunction& f, const CurveFunction& g);

/// x, y and the coefficient of dx/y as series in a local parameter t at a
/// point: t = x - x0 at a generic affine point, t = y at a 2-torsion point and
/// t = x/y at O.
struct LocalExpansion {
  enum class Kind { Generic, TwoTorsion, Infinity };
  CurvePoint point;
  Kind kind = Kind::Generic;
  TruncatedSeries x, y, alpha;
};

LocalExpansion local_expansion(const EllipticCurve& E, const CurvePoint& p, int prec);

/// Order of vanishing of f at p (negative for poles), read off a local series.
int valuation_at(const EllipticCurve& E, const CurveFunction& f, const CurvePoint& p);

struct DivisorEntry {
  CurvePoint point;
  int multiplicity = 0;
};
using Divisor = std::vector<DivisorEntry>;

int divisor_degree(const Divisor& d);

/// Zeros (finite points) and the pole at O of a nonzero f.  The finite
/// zeros must have rational x-coordinates and coordinates in the field;
/// otherwise PointsOutsideField names the unresolved factor of the norm.
Divisor divisor_of(const EllipticCurve& E, const CurveFunction& f);

/// Basis of L(D) = {f : div f + D >= 0} for D = M O - (effective finite part).
/// Positive coefficients at finite points are not supported.
std::vector<CurveFunction> riemann_roch_basis(const EllipticCurve& E, const Divisor& D);

}  // namespace prymker
