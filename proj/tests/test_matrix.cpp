#include <doctest.h>

#include "fixtures.hpp"

using namespace prymker;
using prymker::testing::Gen;

TEST_SUITE("matrix") {

TEST_CASE("rank and kernel of a fixed matrix") {
  // Third row = first + second.
  const Matrix m = Matrix::from_rows({{1, 2, 3, 4}, {0, 1, 1, 0}, {1, 3, 4, 4}}, 4);
  CHECK(rank(m) == 2);
  const auto k = kernel_basis(m);
  REQUIRE(k.size() == 2);
  for (const auto& v : k) CHECK(is_zero(m * v));
  const Echelon e = row_echelon(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
}

TEST_CASE("rank-nullity and kernel on random matrices") {
  Gen gen(21);
  const FieldSpec f(3);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t r = static_cast<std::size_t>(gen.integer(1, 5));
    const std::size_t c = static_cast<std::size_t>(gen.integer(1, 6));
    // Low-rank product so kernels are usually nontrivial.
    const std::size_t inner = static_cast<std::size_t>(gen.integer(1, 3));
    Matrix a(r, inner), b(inner, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < inner; ++j) a(i, j) = gen.scalar(f, 3);
    for (std::size_t i = 0; i < inner; ++i)
      for (std::size_t j = 0; j < c; ++j) b(i, j) = gen.scalar(f, 3);
    const Matrix m = a * b;
    const auto k = kernel_basis(m);
    CHECK(rank(m) + k.size() == c);
    CHECK(rank(m) <= inner);
    for (const auto& v : k) CHECK(is_zero(m * v));
    CHECK(span_rank(k, c) == k.size());
  }
}

TEST_CASE("inverse and solve") {
  Gen gen(22);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = static_cast<std::size_t>(gen.integer(1, 5));
    const Matrix m = gen.invertible(n);
    CHECK(m * inverse(m) == Matrix::identity(n));
    const Vector x = gen.vector(n, FieldSpec(1));
    CHECK(solve(m, m * x) == x);
  }
  const Matrix singular = Matrix::from_rows({{1, 2}, {2, 4}}, 2);
  try {
    (void)inverse(singular);
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DivisionByZero);
  }
  Vector out;
  CHECK(solve_any(singular, {3, 6}, out));
  CHECK(singular * out == Vector{3, 6});
  CHECK_FALSE(solve_any(singular, {1, 0}, out));
}

TEST_CASE("spans") {
  const std::vector<Vector> a{{1, 0, 1}, {0, 1, 1}};
  const std::vector<Vector> b{{1, 1, 2}, {1, -1, 0}};
  CHECK(same_span(a, b, 3));
  CHECK_FALSE(same_span(a, {{1, 0, 0}}, 3));
  CHECK(proportional({2, 4}, {-1, -2}));
  CHECK_FALSE(proportional({0, 0}, {0, 0}));
  CHECK(format_vector({1, Scalar(mpq_class(-1, 2))}) == "[1, -1/2]");
}

}  // TEST_SUITE
