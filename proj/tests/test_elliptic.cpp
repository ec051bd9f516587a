#include <doctest.h>

#include "fixtures.hpp"

using namespace prymker;

namespace {

EllipticCurve curve(long A, long B) { return EllipticCurve(Scalar(A), Scalar(B)); }
CurvePoint pt(long x, long y) { return CurvePoint::affine(Scalar(x), Scalar(y)); }

int multiplicity(const Divisor& d, const CurvePoint& p) {
  int m = 0;
  for (const auto& e : d)
    if (e.point == p) m += e.multiplicity;
  return m;
}

}  // namespace

TEST_SUITE("elliptic") {

TEST_CASE("singular curves are rejected") {
  try {
    (void)curve(0, 0);
    FAIL("expected InvalidCurve");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidCurve);
  }
  CHECK_THROWS_AS((void)curve(-3, 2), Error);  // 4(-27) + 27*4 = 0
}

TEST_CASE("group law") {
  const auto E = curve(0, 17);
  const std::vector<CurvePoint> pts{pt(-2, 3), pt(-1, 4), pt(2, 5), pt(4, 9), pt(8, -23)};
  for (const auto& p : pts) {
    CHECK(E.contains(p));
    CHECK(E.add(p, E.negate(p)) == CurvePoint::infinity());
    CHECK(E.add(p, CurvePoint::infinity()) == p);
  }
  for (const auto& p : pts)
    for (const auto& q : pts)
      for (const auto& r : pts) {
        const auto s = E.add(E.add(p, q), r);
        CHECK(E.contains(s));
        CHECK(s == E.add(p, E.add(q, r)));
      }
  // (-1,0) is 2-torsion on y^2 = x^3 + 1.
  const auto E1 = curve(0, 1);
  CHECK(E1.add(pt(-1, 0), pt(-1, 0)) == CurvePoint::infinity());
}

TEST_CASE("polynomial helpers") {
  const Poly p{Scalar(0), Scalar(2), Scalar(-1), Scalar(-1)};  // -x^3 - x^2 + 2x
  CHECK(poly_degree(p) == 3);
  CHECK(poly_to_string(p, "x") == "-x^3 - x^2 + 2*x");
  const auto roots = rational_roots(p);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0].first == -2);
  CHECK(roots[1].first == 0);
  CHECK(roots[2].first == 1);
  const auto r2 = rational_roots({Scalar(mpq_class(-1, 4)), Scalar(0), Scalar(1)});  // x^2 - 1/4
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].first == mpq_class(-1, 2));
  const auto r3 = rational_roots({Scalar(1), Scalar(-2), Scalar(1)});  // (x - 1)^2
  REQUIRE(r3.size() == 1);
  CHECK(r3[0].second == 2);
}

TEST_CASE("local expansions satisfy the curve equation") {
  const auto E = curve(0, 1);
  for (const auto& p : {pt(0, 1), pt(2, 3), pt(-1, 0), CurvePoint::infinity()}) {
    const LocalExpansion le = local_expansion(E, p, 12);
    const auto lhs = le.y * le.y;
    const auto rhs = poly_eval(E.cubic(), le.x);
    const int P = std::min(lhs.precision(), rhs.precision());
    CHECK(P >= 5);
    CHECK((lhs - rhs).truncated(P).is_zero());
    // alpha = x'/y everywhere.
    const auto a = le.x.derivative() / le.y;
    const int Q = std::min(a.precision(), le.alpha.precision());
    CHECK((a - le.alpha).truncated(Q).is_zero());
    CHECK(le.alpha.valuation() == 0);
  }
  CHECK(local_expansion(E, pt(-1, 0), 8).kind == LocalExpansion::Kind::TwoTorsion);
  CHECK(local_expansion(E, CurvePoint::infinity(), 8).x.valuation() == -2);
  CHECK(local_expansion(E, CurvePoint::infinity(), 8).y.valuation() == -3);
}

TEST_CASE("divisor of y - x - 1 on y^2 = x^3 + 1") {
  const auto E = curve(0, 1);
  const CurveFunction h{{Scalar(-1), Scalar(-1)}, {Scalar(1)}};
  const Divisor d = divisor_of(E, h);
  CHECK(divisor_degree(d) == 0);
  CHECK(multiplicity(d, pt(0, 1)) == 1);
  CHECK(multiplicity(d, pt(2, 3)) == 1);
  CHECK(multiplicity(d, pt(-1, 0)) == 1);
  CHECK(multiplicity(d, CurvePoint::infinity()) == -3);
  // Substitution oracle: every listed zero is a zero.
  for (const auto& e : d)
    if (!e.point.at_infinity) CHECK(h.evaluate(e.point).is_zero());
}

TEST_CASE("divisor of x and of constants") {
  const auto E = curve(0, 1);
  const Divisor d = divisor_of(E, CurveFunction::x());
  CHECK(multiplicity(d, pt(0, 1)) == 1);
  CHECK(multiplicity(d, pt(0, -1)) == 1);
  CHECK(multiplicity(d, CurvePoint::infinity()) == -2);
  CHECK(divisor_of(E, CurveFunction::constant(Scalar(5))).empty());
  // y vanishes to order 1 at each 2-torsion point; (x + 1)^2 to order 4 at (-1, 0).
  const auto E2 = curve(-1, 0);
  const Divisor dy = divisor_of(E2, CurveFunction::y());
  for (long x : {-1, 0, 1}) CHECK(multiplicity(dy, pt(x, 0)) == 1);
  CHECK(multiplicity(dy, CurvePoint::infinity()) == -3);
  // On y^2 = x^3 + 1 two of the zeros of y are irrational.
  CHECK_THROWS_AS((void)divisor_of(E, CurveFunction::y()), Error);
  const CurveFunction sq{{Scalar(1), Scalar(2), Scalar(1)}, {}};
  CHECK(multiplicity(divisor_of(E, sq), pt(-1, 0)) == 4);
}

TEST_CASE("zeros outside the field are reported") {
  const auto E = curve(0, 17);
  try {
    (void)divisor_of(E, CurveFunction{{Scalar(-1), Scalar(1)}, {}});  // x = 1 needs y^2 = 18
    FAIL("expected PointsOutsideField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointsOutsideField);
  }
  try {
    (void)divisor_of(E, CurveFunction{{Scalar(-3), Scalar(0), Scalar(1)}, {}});  // x^2 = 3
    FAIL("expected PointsOutsideField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointsOutsideField);
    CHECK(std::string(e.what()).find("x^2 - 3") != std::string::npos);
  }
}

TEST_CASE("function arithmetic") {
  const auto E = curve(0, 1);
  const auto y2 = multiply(E, CurveFunction::y(), CurveFunction::y());
  CHECK(y2 == CurveFunction{E.cubic(), {}});
  CHECK(CurveFunction::y().pole_order() == 3);
  CHECK(y2.pole_order() == 6);
  CHECK(CurveFunction{{Scalar(-1), Scalar(-1)}, {Scalar(1)}}.to_string() == "-x - 1 + y");
}

TEST_CASE("Riemann-Roch spaces") {
  const auto E = curve(0, 1);
  const auto O = CurvePoint::infinity();
  const auto two = riemann_roch_basis(E, {{O, 2}});
  REQUIRE(two.size() == 2);
  CHECK(two[0] == CurveFunction::constant(Scalar(1)));
  CHECK(two[1] == CurveFunction::x());
  const auto zero = riemann_roch_basis(E, {});
  REQUIRE(zero.size() == 1);
  CHECK(zero[0].is_constant());
  const auto d = riemann_roch_basis(E, {{O, 3}, {pt(0, 1), -1}});
  REQUIRE(d.size() == 2);
  for (const auto& f : d) {
    CHECK(valuation_at(E, f, pt(0, 1)) >= 1);
    CHECK(f.pole_order() <= 3);
  }
  // Vanishing to order 2 at a 2-torsion point.
  const auto t = riemann_roch_basis(E, {{O, 4}, {pt(-1, 0), -2}});
  REQUIRE(t.size() == 2);
  for (const auto& f : t) CHECK(valuation_at(E, f, pt(-1, 0)) >= 2);
  // Degree zero, not principal: P - O with P != O has no sections.
  CHECK(riemann_roch_basis(E, {{O, 1}, {pt(0, 1), -1}}).empty());
  try {
    (void)riemann_roch_basis(E, {{O, -1}});
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
}

}  // TEST_SUITE
