#include <doctest.h>

#include "fixtures.hpp"

using namespace prymker;
using prymker::testing::Gen;

namespace {

TruncatedSeries z() { return TruncatedSeries::monomial(Scalar(1), 1); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("series") {

TEST_CASE("precision bookkeeping") {
  const auto a = TruncatedSeries::from_coefficients(0, {1, 2, 3}, 5);
  const auto b = TruncatedSeries::from_coefficients(2, {1, 1}, 7);
  CHECK((a + b).precision() == 5);
  CHECK((a * b).precision() == std::min(5 + 2, 7 + 0));
  CHECK((a * TruncatedSeries::monomial(Scalar(1), 3)).precision() == 8);
  CHECK(a.derivative().precision() == 4);
  CHECK(a.shifted(-2).precision() == 3);
  CHECK(a.coeff(4) == Scalar());
  CHECK(code_of([&] { (void)a.coeff(5); }) == ErrorCode::InsufficientPrecision);
  CHECK(TruncatedSeries::polynomial({1, 2}).is_exact());
  CHECK((TruncatedSeries::polynomial({1, 2}) * TruncatedSeries::polynomial({0, 3})).is_exact());
}

TEST_CASE("geometric series") {
  const auto one = TruncatedSeries::constant(Scalar(1), 12);
  const auto q = one / TruncatedSeries::polynomial({1, -1});
  CHECK(q.precision() == 12);
  for (int e = 0; e < 12; ++e) CHECK(q.coeff(e).is_one());
  CHECK(code_of([] { (void)(TruncatedSeries::constant(Scalar(1)) / TruncatedSeries::polynomial({1, -1})); }) ==
        ErrorCode::InsufficientPrecision);
  CHECK(code_of([] { (void)(z() / TruncatedSeries::zero(4)); }) == ErrorCode::DivisionByZero);
  // Division by a monomial stays exact.
  CHECK((TruncatedSeries::polynomial({0, 0, 3}) / z()).is_exact());
}

TEST_CASE("square root against the binomial series") {
  const int P = 15;
  const auto f = TruncatedSeries::polynomial({1, 1}).truncated(P);
  const auto r = nth_root(f, 2);
  mpq_class c = 1;
  for (int n = 0; n < P; ++n) {
    CHECK(r.coeff(n) == Scalar(c));
    c = c * (mpq_class(1, 2) - n) / (n + 1);
  }
  // The same root by Newton on y^2 - (1 + z).
  BivariatePolynomial F;
  F.add_term(0, 2, Scalar(1));
  F.add_term(0, 0, Scalar(-1));
  F.add_term(1, 0, Scalar(-1));
  std::vector<TruncatedSeries> its;
  const auto y = newton_solve(F, TruncatedSeries::constant(Scalar(1), 1), P, &its);
  CHECK(y == r);
  // Precision doubles: 1, 2, 4, 8, 15.
  REQUIRE(its.size() == 5);
  CHECK(its[3].precision() == 8);
  CHECK(code_of([] { (void)nth_root(TruncatedSeries::polynomial({2, 1}).truncated(5), 2); }) ==
        ErrorCode::NotAnNthPower);
  CHECK(code_of([] { (void)nth_root(TruncatedSeries::monomial(Scalar(1), 3, 8), 2); }) ==
        ErrorCode::NonDivisibleValuation);
}

TEST_CASE("newton preconditions") {
  BivariatePolynomial F;
  F.add_term(0, 2, Scalar(1));
  F.add_term(1, 0, Scalar(-1));  // y^2 = z has no power series root
  CHECK(code_of([&] { (void)newton_solve(F, TruncatedSeries::zero(1), 6); }) == ErrorCode::SingularJacobian);
  BivariatePolynomial G;
  G.add_term(0, 1, Scalar(1));
  G.add_term(0, 0, Scalar(-2));
  CHECK(code_of([&] { (void)newton_solve(G, TruncatedSeries::constant(Scalar(1), 1), 6); }) ==
        ErrorCode::PreconditionFailed);
}

TEST_CASE("reversion of z - z^2 gives Catalan numbers") {
  const int P = 12;
  const auto f = TruncatedSeries::polynomial({0, 1, -1}).truncated(P);
  const auto g = reversion(f);
  mpz_class cat = 1;  // C_0
  for (int n = 1; n < P; ++n) {
    CHECK(g.coeff(n) == Scalar(mpq_class(cat)));
    cat = cat * 2 * (2 * n - 1) / (n + 1);
  }
  CHECK(f.compose(g).truncated(P) == z().truncated(P));
  CHECK(code_of([] { (void)reversion(TruncatedSeries::polynomial({0, 0, 1}).truncated(4)); }) ==
        ErrorCode::InvalidValuation);
}

TEST_CASE("composition and substitutions") {
  const auto f = TruncatedSeries::from_coefficients(-1, {1, 2, 3, 4}, 3);
  const auto sq = f.substitute_power(2);
  CHECK(sq.valuation() == -2);
  CHECK(sq.coeff(2) == Scalar(3));
  CHECK(sq.coeff(1) == Scalar());
  CHECK(sq.precision() == 6);
  const auto sc = f.scale_variable(Scalar(2));
  CHECK(sc.coeff(-1) == Scalar(mpq_class(1, 2)));
  CHECK(sc.coeff(2) == Scalar(16));
  // f(2z) via compose agrees with scale_variable.
  CHECK(f.compose(TruncatedSeries::monomial(Scalar(2), 1)) == sc);
}

TEST_CASE("residue is invariant under unit reparametrization") {
  Gen gen(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = static_cast<int>(gen.integer(-4, -1));
    std::vector<Scalar> c{gen.nonzero_rational()};
    for (int i = 1; i < 10; ++i) c.push_back(Scalar(gen.rational()));
    const auto f = TruncatedSeries::from_coefficients(v, c, v + 10);
    const auto u = TruncatedSeries::monomial(Scalar(1), 1) * gen.unit(static_cast<int>(gen.integer(1, 6))).truncated(12);
    const auto pulled = f.compose(u) * u.derivative();
    CHECK(residue(pulled) == residue(f));
  }
}

TEST_CASE("residue needs the coefficient window") {
  CHECK(residue(TruncatedSeries::polynomial({1, 2})) == Scalar());
  CHECK(code_of([] { (void)residue(TruncatedSeries::zero(-1)); }) == ErrorCode::InsufficientPrecision);
}

}  // TEST_SUITE
