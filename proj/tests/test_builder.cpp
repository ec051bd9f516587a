#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace prymker;
using prymker::testing::fixture;
using prymker::testing::kFixtures;

namespace {

ErrorCode build_error(const CyclicCoverSpec& s) {
  try {
    (void)build_cover(s);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

ErrorCode parse_error(const std::string& text) {
  try {
    (void)parse_cover_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CurveFunction h_of(const CyclicCoverSpec& s) {
  CurveFunction h;
  for (const auto& c : s.P) h.P.push_back(Scalar(c));
  for (const auto& c : s.Q) h.Q.push_back(Scalar(c));
  return h;
}

}  // namespace

TEST_SUITE("builder") {

TEST_CASE("the genus-4 triple cover") {
  const BuiltCover& c = fixture("pirola");
  const CoveringDatum& d = c.datum;
  CHECK(d.genus == 4);
  CHECK(d.degree == 3);
  CHECK(d.field.order() == 3);
  CHECK(d.charts.size() == 3);
  for (const auto& ch : d.charts) CHECK(ch.index == 3);
  CHECK(c.base_point_searched);
  CHECK(c.base_point == CurvePoint::affine(Scalar(0), Scalar(-1)));
  CHECK(c.h_at_base == Scalar(-2));
  CHECK(c.characters == std::vector<int>{0, 1, 2, 2});
  CHECK(d.basis_names == std::vector<std::string>{"dx/y", "w^-1 dx/y", "w^-2 dx/y", "(x) * w^-2 dx/y"});
  CHECK(d.fiber.labels == std::vector<std::string>{"w = 1", "w = zeta^1", "w = zeta^2"});
  CHECK(d.alpha_index_hint == std::optional<std::size_t>(0));
}

TEST_CASE("genus and character bookkeeping") {
  for (const char* name : kFixtures) {
    const BuiltCover& c = fixture(name);
    const int N = c.datum.degree;
    const long r = static_cast<long>(c.datum.charts.size());
    CHECK(2 * c.datum.genus == 2 + (N - 1) * r);
    CHECK(c.characters.size() == static_cast<std::size_t>(c.datum.genus));
    CHECK(c.datum.basis_names.size() == static_cast<std::size_t>(c.datum.genus));
    CHECK(std::count(c.characters.begin(), c.characters.end(), 0) == 1);
  }
  CHECK(fixture("bielliptic_g4").datum.charts.size() == 6);
  CHECK(fixture("bielliptic_g3").datum.genus == 3);
}

TEST_CASE("branch charts solve w^N = h / h(c)") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const BuiltCover& c = fixture(name);
    const CyclicCoverSpec spec = std::string(name) == "pirola" ? pirola_spec()
                                 : std::string(name) == "bielliptic_g4" ? bielliptic_g4_spec()
                                                                        : bielliptic_g3_spec();
    const EllipticCurve E(Scalar(spec.A), Scalar(spec.B));
    const CurveFunction hn = h_of(spec).scaled(c.h_at_base.inverse());
    const int N = c.datum.degree;
    for (const auto& e : c.divisor_h) {
      if (e.multiplicity != 1) continue;
      const BranchChart bc = branch_chart(E, hn, e.point, N, 16);
      const auto lhs = bc.y * bc.y, rhs = poly_eval(E.cubic(), bc.x);
      const int P = std::min(lhs.precision(), rhs.precision());
      CHECK(P >= 8);
      CHECK((lhs - rhs).truncated(P).is_zero());
      const auto v = hn.expand(bc.x, bc.y) - TruncatedSeries::monomial(Scalar(1), N);
      CHECK(v.truncated(std::min(v.precision(), 12)).is_zero());
      CHECK(bc.alpha.valuation() == N - 1);
    }
  }
}

TEST_CASE("chart data") {
  for (const char* name : kFixtures) {
    const CoveringDatum& d = fixture(name).datum;
    for (const auto& ch : d.charts) {
      CHECK(ch.alpha_pullback.valuation() == ch.index - 1);
      CHECK(ch.forms.size() == static_cast<std::size_t>(d.genus));
      for (const auto& f : ch.forms) CHECK(f.precision() >= 40);
    }
  }
}

TEST_CASE("fiber ratios in closed form") {
  const BuiltCover& c = fixture("pirola");
  const Scalar z = Scalar::zeta(c.datum.field);
  // eta_3 / alpha = x w^-2 and x(c) = 0; w = zeta^m at the m-th point.
  for (int m = 0; m < 3; ++m) {
    const Vector& row = c.datum.fiber.ratios[m];
    CHECK(row[0] == Scalar(1));
    CHECK(row[1] == z.pow(-m));
    CHECK(row[2] == z.pow(-2 * m));
    CHECK(row[3].is_zero());
  }
  const BuiltCover& b = fixture("bielliptic_g4");
  // c = (4, 9): eta = (1, 1, x, y) w^-1 dx/y.
  CHECK(b.datum.fiber.ratios[0] == Vector{1, 1, 4, 9});
  CHECK(b.datum.fiber.ratios[1] == Vector{1, -1, -4, -9});
}

TEST_CASE("unsupported inputs") {
  CyclicCoverSpec s = pirola_spec(20);
  for (int N : {1, 4, 6, 17}) {
    s.N = N;
    CHECK(build_error(s) == ErrorCode::UnsupportedOrder);
  }
  s = pirola_spec(20);
  s.P = {0, 1};  // h = x: pole of order 2 at O, prime to 3
  s.Q = {};
  CHECK(build_error(s) == ErrorCode::UnsupportedRamification);
  s = pirola_spec(20);
  s.B = 0;
  CHECK(build_error(s) == ErrorCode::InvalidCurve);
  s = pirola_spec(20);
  s.base_point = std::array<mpq_class, 2>{0, 1};  // h(0, 1) = 0
  CHECK(build_error(s) == ErrorCode::PreconditionFailed);
  s.base_point = std::array<mpq_class, 2>{1, 1};  // not on the curve
  CHECK(build_error(s) == ErrorCode::PreconditionFailed);
  s = bielliptic_g4_spec(20);
  s.P = {-1, 1};  // zeros of x - 1 are not rational
  CHECK(build_error(s) == ErrorCode::PointsOutsideField);
}

TEST_CASE("explicit base point") {
  CyclicCoverSpec s = pirola_spec(20);
  s.base_point = std::array<mpq_class, 2>{2, -3};
  const BuiltCover c = build_cover(s);
  CHECK_FALSE(c.base_point_searched);
  CHECK(c.h_at_base == Scalar(-6));
  CHECK(validate(c.datum).ok());
  CHECK(run_pipeline(c.datum).kernel.dimension() == 4);
}

TEST_CASE("base point search") {
  const EllipticCurve E(Scalar(0), Scalar(17));
  const auto p = search_base_point(E, h_of(bielliptic_g4_spec()));
  REQUIRE(p.has_value());
  // x = -1, 2, -2 are zeros of h; x = 4 is the first rational point left.
  CHECK(*p == CurvePoint::affine(Scalar(4), Scalar(9)));
}

TEST_CASE("spec parsing") {
  const CyclicCoverSpec s = parse_cover_spec(
      R"({"E": {"A": "-3/4", "B": 2}, "h": {"P": [1, "1/2"]}, "N": 5, "c": {"x": 0, "y": "7/5"}})");
  CHECK(s.A == mpq_class(-3, 4));
  CHECK(s.B == 2);
  CHECK(s.P == std::vector<mpq_class>{1, mpq_class(1, 2)});
  CHECK(s.Q.empty());
  CHECK(s.N == 5);
  REQUIRE(s.base_point.has_value());
  CHECK((*s.base_point)[1] == mpq_class(7, 5));
  CHECK(s.precision == 40);
  const CyclicCoverSpec t = parse_cover_spec(cover_spec_to_json_string(s));
  CHECK(cover_spec_to_json_string(t) == cover_spec_to_json_string(s));

  CHECK(parse_error("{") == ErrorCode::ParseError);
  CHECK(parse_error(R"({"h": {"P": [1]}, "N": 3})") == ErrorCode::SchemaError);
  CHECK(parse_error(R"({"E": {"A": 0, "B": "x"}, "h": {"P": [1]}, "N": 3})") == ErrorCode::ParseError);
  CHECK(parse_error(R"({"E": {"A": 0, "B": true}, "h": {"P": [1]}, "N": 3})") == ErrorCode::SchemaError);
  CHECK(parse_error(R"({"E": {"A": 0, "B": 1}, "h": {"P": [1]}, "N": 3, "precision": 0})") ==
        ErrorCode::SchemaError);
}

TEST_CASE("shipped spec files match the built-in fixtures") {
  const std::string dir = PRYMKER_DATA_DIR;
  CHECK(to_json_string(build_cover(parse_cover_spec(read_file(dir + "/specs/pirola.json"))).datum) ==
        to_json_string(fixture("pirola").datum));
  CHECK(to_json_string(build_cover(parse_cover_spec(read_file(dir + "/specs/bielliptic_g4.json"))).datum) ==
        to_json_string(fixture("bielliptic_g4").datum));
  CHECK(to_json_string(build_cover(parse_cover_spec(read_file(dir + "/specs/bielliptic_g3.json"))).datum) ==
        to_json_string(fixture("bielliptic_g3").datum));
}

TEST_CASE("building is deterministic") {
  const std::string a = to_json_string(build_cover(pirola_spec()).datum);
  CHECK(a == to_json_string(build_cover(pirola_spec()).datum));
  CHECK(a == to_json_string(fixture("pirola").datum));
}

TEST_CASE("rescaling the base differential changes nothing") {
  CoveringDatum d = fixture("pirola").datum;
  const Scalar two(2);
  for (auto& ch : d.charts) ch.alpha_pullback = ch.alpha_pullback * TruncatedSeries::constant(two);
  for (auto& row : d.fiber.ratios)
    for (auto& r : row) r = r / two;
  d.alpha_index_hint.reset();
  const PipelineResults r = run_pipeline(d);
  CHECK(r.split.alpha_coords == Vector{2, 0, 0, 0});
  CHECK(r.kernel.dimension() == 4);
  CHECK(r.quadrics.dimension() == 1);
  CHECK(r.criterion.dim_ker_dP == 2);
}

}  // TEST_SUITE
