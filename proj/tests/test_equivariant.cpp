#include <doctest.h>

#include "fixtures.hpp"

using namespace prymker;
using prymker::testing::fixture;
using prymker::testing::Gen;
using prymker::testing::kFixtures;
using prymker::testing::results;

namespace {

bool same_on_terms(const QuadDifferentialData& a, const QuadDifferentialData& b, const std::vector<int>& terms) {
  if (a.charts.size() != b.charts.size() || a.fiber != b.fiber) return false;
  for (std::size_t j = 0; j < a.charts.size(); ++j)
    if (!(a.charts[j] - b.charts[j]).truncated(terms[j]).is_zero()) return false;
  return true;
}

}  // namespace

TEST_SUITE("equivariant") {

TEST_CASE("built actions are consistent") {
  for (const char* name : kFixtures) {
    const auto& c = fixture(name);
    CHECK(check_action(c.datum, results(name).split, c.action).empty());
    // The identity is an automorphism of every datum.
    CHECK(check_action(c.datum, results(name).split, trivial_action(c.datum)).empty());
  }
}

TEST_CASE("a broken action is caught") {
  const auto& c = fixture("pirola");
  CyclicAction a = c.action;
  a.matrix(1, 1) = a.matrix(1, 1) * Scalar(2);
  CHECK_FALSE(check_action(c.datum, results("pirola").split, a).empty());
  CyclicAction b = c.action;
  std::swap(b.fiber_permutation[0], b.fiber_permutation[1]);
  CHECK_FALSE(check_action(c.datum, results("pirola").split, b).empty());
}

TEST_CASE("eigenspace dimensions") {
  const auto& p = fixture("pirola");
  const Eigenspaces e = eigenspaces(p.datum, p.action);
  CHECK(e.dims() == std::vector<std::size_t>{1, 2, 1});
  const Sym2Eigenspaces s = sym2_eigenspaces(p.datum, p.action, e, results("pirola").split);
  CHECK(s.full_dims() == std::vector<std::size_t>{3, 3, 4});
  CHECK(s.minus_dims() == std::vector<std::size_t>{2, 1, 3});
  for (const char* name : {"bielliptic_g4", "bielliptic_g3"}) {
    const auto& c = fixture(name);
    const int g = c.datum.genus;
    CHECK(eigenspaces(c.datum, c.action).dims() == std::vector<std::size_t>{1, static_cast<std::size_t>(g - 1)});
  }
  const Eigenspaces t = eigenspaces(p.datum, trivial_action(p.datum));
  CHECK(t.dims() == std::vector<std::size_t>{4});
}

TEST_CASE("eigenvectors") {
  const auto& p = fixture("pirola");
  const Eigenspaces e = eigenspaces(p.datum, p.action);
  const Matrix G = generator_matrix(p.action, e.generator_power).transpose();
  const Scalar z = Scalar::zeta(p.datum.field);
  for (std::size_t chi = 0; chi < e.spaces.size(); ++chi)
    for (const auto& v : e.spaces[chi]) CHECK(G * v == scaled(v, z.pow(static_cast<long>(chi))));
}

TEST_CASE("multiplication commutes with the action") {
  Gen gen(71);
  for (const char* name : kFixtures) {
    const auto& c = fixture(name);
    const auto& t = results(name).table;
    for (int trial = 0; trial < 5; ++trial) {
      const Vector a = gen.vector(c.datum.genus, c.datum.field), b = gen.vector(c.datum.genus, c.datum.field);
      const auto phi = SymSquareElement::product(a, b);
      CHECK(same_on_terms(multiply(t, phi.transformed(c.action.matrix)), transported_multiply(t, c.action, phi),
                          t.terms));
    }
  }
}

TEST_CASE("eigen dimensions survive a change of basis") {
  Gen gen(72);
  const auto& p = fixture("pirola");
  for (int trial = 0; trial < 3; ++trial) {
    const Matrix B = gen.invertible(4);
    const CoveringDatum d = change_basis(p.datum, B);
    CyclicAction a = p.action;
    a.matrix = B * p.action.matrix * inverse(B);
    const TraceSplit s = trace_split(d);
    CHECK(check_action(d, s, a).empty());
    const Eigenspaces e = eigenspaces(d, a);
    CHECK(e.dims() == std::vector<std::size_t>{1, 2, 1});
    CHECK(sym2_eigenspaces(d, a, e, s).full_dims() == std::vector<std::size_t>{3, 3, 4});
  }
}

TEST_CASE("roots of unity must be in the field") {
  const auto& c = fixture("bielliptic_g4");
  CyclicAction a = c.action;
  a.order = 3;
  try {
    (void)eigenspaces(c.datum, a);
    FAIL("expected FieldTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::FieldTooSmall);
  }
}

TEST_CASE("battery") {
  const auto& p = fixture("pirola");
  const BatteryReport r = pirola_battery(p.datum, p.action, results("pirola"));
  CHECK(r.all_pass());
  CHECK(r.checks.size() == 7);
  CHECK(r.eigen_dims == std::vector<std::size_t>{1, 2, 1});
  for (const auto& ch : r.checks) {
    CAPTURE(ch.name);
    CHECK(ch.pass);
  }
  const auto& b = fixture("bielliptic_g4");
  try {
    (void)pirola_battery(b.datum, b.action, results("bielliptic_g4"));
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
  CyclicAction broken = p.action;
  broken.matrix(1, 1) = broken.matrix(1, 1) * Scalar(2);
  CHECK_THROWS_AS((void)pirola_battery(p.datum, broken, results("pirola")), Error);
}

TEST_CASE("action JSON round trip") {
  for (const char* name : kFixtures) {
    const auto& c = fixture(name);
    const std::string text = action_to_json_string(c.action);
    const CyclicAction back = action_from_json_string(text, c.datum.field);
    CHECK(back.order == c.action.order);
    CHECK(back.matrix == c.action.matrix);
    CHECK(back.fiber_permutation == c.action.fiber_permutation);
    CHECK(action_to_json_string(back) == text);
  }
}

}  // TEST_SUITE
