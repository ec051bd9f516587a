#include <doctest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"

using namespace prymker;
using prymker::testing::fixture;
using prymker::testing::Gen;
using prymker::testing::kFixtures;

namespace {

CoveringDatum truncated_datum(const CoveringDatum& d, int terms) {
  CoveringDatum t = d;
  for (auto& c : t.charts) {
    c.alpha_pullback = c.alpha_pullback.truncated(terms);
    for (auto& f : c.forms) f = f.truncated(terms);
  }
  return t;
}

ErrorCode load_error(const std::string& text) {
  try {
    (void)from_json_string(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

}  // namespace

TEST_SUITE("covering") {

TEST_CASE("built fixtures validate with full certificates") {
  for (const char* name : kFixtures) {
    CAPTURE(name);
    const ValidationReport r = validate(fixture(name).datum);
    CHECK(r.ok());
    CHECK(r.independence_certified);
    CHECK(r.quadric_certified);
    CHECK(r.coefficient_count >= 4 * fixture(name).datum.genus - 3);
  }
}

TEST_CASE("default truncation") {
  CHECK(default_truncation(4, 3, 3) == 10);
  CHECK(default_truncation(4, 6, 2) == 7);
}

TEST_CASE("under-truncated data are rejected for precision, never for dimension") {
  const CoveringDatum& d = fixture("pirola").datum;
  for (int terms = 1; terms <= 3; ++terms) {
    CAPTURE(terms);
    const ValidationReport r = validate(truncated_datum(d, terms));
    CHECK(r.has(ErrorCode::InsufficientPrecision));
    CHECK_FALSE(r.has(ErrorCode::DimensionMismatch));
    CHECK_FALSE(r.quadric_certified);
  }
  // Four terms per chart give 15 >= 4g - 3 = 13 coefficients.
  CHECK(validate(truncated_datum(d, 4)).ok());
}

TEST_CASE("genus below three is a precondition failure") {
  CyclicCoverSpec s;
  s.A = 0;
  s.B = 1;
  s.P = {0, 1};  // h = x: two simple zeros, genus 2 for N = 2
  s.N = 2;
  s.precision = 12;
  const BuiltCover c = build_cover(s);
  CHECK(c.datum.genus == 2);
  const ValidationReport r = validate(c.datum);
  CHECK(r.has(ErrorCode::PreconditionFailed));
}

TEST_CASE("shape errors") {
  CoveringDatum d = fixture("bielliptic_g3").datum;
  d.charts[1].forms.pop_back();
  CHECK(validate(d).has(ErrorCode::SchemaError));
  CoveringDatum e = fixture("bielliptic_g3").datum;
  e.charts[0].alpha_pullback = e.charts[0].alpha_pullback.shifted(1);
  CHECK(validate(e).has(ErrorCode::InvalidValuation));
}

TEST_CASE("JSON round trip is byte exact") {
  for (const char* name : kFixtures) {
    const std::string text = to_json_string(fixture(name).datum);
    const CoveringDatum back = from_json_string(text);
    CHECK(back == fixture(name).datum);
    CHECK(to_json_string(back) == text);
  }
  const std::string path = std::string(PRYMKER_TMP_DIR) + "/roundtrip.json";
  save(fixture("pirola").datum, path);
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == to_json_string(fixture("pirola").datum));
  CHECK(load(path) == fixture("pirola").datum);
}

TEST_CASE("malformed JSON") {
  CHECK(load_error("{") == ErrorCode::ParseError);
  CHECK(load_error("[]") == ErrorCode::SchemaError);
  try {
    (void)from_json_string("{}");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("/field") != std::string::npos);
  }
  std::string text = to_json_string(fixture("bielliptic_g3").datum);
  const auto pos = text.find("\"genus\": 3");
  REQUIRE(pos != std::string::npos);
  CHECK(load_error(text.replace(pos, 10, "\"genus\": \"3\"")) == ErrorCode::SchemaError);
  CHECK(load_error(R"({"field": {"cyclotomic_order": 8}})") == ErrorCode::UnsupportedField);
  try {
    (void)load("/nonexistent/datum.json");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

TEST_CASE("series windows must match their precision") {
  std::string text = to_json_string(fixture("bielliptic_g3").datum);
  // Drop the last coefficient of the first alpha series.
  const auto a = text.find("\"alpha_pullback\"");
  const auto c = text.find("\"coeffs\": [", a);
  const auto close = text.find(']', c);
  const auto comma = text.rfind(',', close);
  text.erase(comma, close - comma);
  CHECK(load_error(text) == ErrorCode::SchemaError);
}

TEST_CASE("chart reparametrization keeps certificates") {
  Gen gen(41);
  const CoveringDatum& d = fixture("bielliptic_g4").datum;
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t j = static_cast<std::size_t>(gen.integer(0, static_cast<long>(d.charts.size()) - 1));
    const CoveringDatum r = reparametrize_chart(d, j, gen.unit(4));
    CHECK(r.charts[j].forms[0].valuation() == d.charts[j].forms[0].valuation());
    CHECK(chart_terms(r.charts[j]) == chart_terms(d.charts[j]));
    CHECK(rank(coefficient_matrix(r)) == static_cast<std::size_t>(d.genus));
  }
  try {
    (void)reparametrize_chart(d, 0, TruncatedSeries::polynomial({0, 1}));
    FAIL("expected InvalidValuation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidValuation);
  }
}

TEST_CASE("basis change") {
  Gen gen(42);
  const CoveringDatum& d = fixture("pirola").datum;
  const Matrix B = gen.invertible(4);
  const CoveringDatum c = change_basis(d, B);
  CHECK(validate(c).ok());
  CHECK(c.basis_names.size() == 4);
  // The first fiber ratio transforms by B.
  CHECK(c.fiber.ratios[0] == B * d.fiber.ratios[0]);
  CHECK(change_basis(d, Matrix::identity(4)).alpha_index_hint == d.alpha_index_hint);
}

}  // TEST_SUITE
