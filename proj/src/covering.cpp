#include "prymker/covering.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "prymker/json_io.hpp"

namespace prymker {

int CoveringDatum::reduced_ramification_degree() const {
  int s = 0;
  for (const auto& c : charts) s += c.index - 2;
  return s;
}

bool ValidationReport::has(ErrorCode code) const {
  return std::any_of(findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; });
}

void ValidationReport::raise() const {
  if (findings.empty()) return;
  const Finding& f = findings.front();
  throw Error(f.code, f.check + ": " + f.message);
}

int default_truncation(int genus, int branch_count, int index) {
  const int n = std::max(branch_count, 1);
  return (4 * genus - 3 + n - 1) / n + index + 2;
}

int chart_terms(const RamificationChart& chart) {
  int t = TruncatedSeries::kExact;
  int top = 0;
  for (const auto& f : chart.forms) {
    t = std::min(t, f.precision());
    if (!f.is_zero()) top = std::max(top, f.valuation() + static_cast<int>(f.stored().size()));
  }
  if (t >= TruncatedSeries::kExact / 2) return top;
  return std::max(t, 0);
}

namespace {

bool shape_ok(const CoveringDatum& d, ValidationReport& rep) {
  auto fail = [&](const std::string& msg) {
    rep.findings.push_back({"shape", ErrorCode::SchemaError, msg});
  };
  const std::size_t g = static_cast<std::size_t>(std::max(d.genus, 0));
  const std::size_t before = rep.findings.size();
  if (d.genus < 1) fail("genus must be positive");
  if (d.degree < 1) fail("degree must be positive");
  if (d.basis_names.size() != g)
    fail("basis_names has " + std::to_string(d.basis_names.size()) + " entries, genus is " + std::to_string(g));
  if (d.charts.empty()) fail("no ramification charts");
  for (std::size_t j = 0; j < d.charts.size(); ++j)
    if (d.charts[j].forms.size() != g)
      fail("chart " + std::to_string(j) + " carries " + std::to_string(d.charts[j].forms.size()) + " forms, expected " +
           std::to_string(g));
  if (d.fiber.ratios.size() != static_cast<std::size_t>(std::max(d.degree, 0)))
    fail("fiber has " + std::to_string(d.fiber.ratios.size()) + " points, degree is " + std::to_string(d.degree));
  if (d.fiber.labels.size() != d.fiber.ratios.size()) fail("fiber labels and ratio rows differ in number");
  for (std::size_t k = 0; k < d.fiber.ratios.size(); ++k)
    if (d.fiber.ratios[k].size() != g) fail("fiber row " + std::to_string(k) + " has the wrong length");
  if (d.alpha_index_hint && *d.alpha_index_hint >= g) fail("alpha_index_hint out of range");
  return rep.findings.size() == before;
}

}  // namespace

Matrix coefficient_matrix(const CoveringDatum& d) {
  const std::size_t g = static_cast<std::size_t>(d.genus);
  std::size_t cols = d.fiber.ratios.size();
  std::vector<int> terms;
  for (const auto& c : d.charts) {
    terms.push_back(chart_terms(c));
    cols += static_cast<std::size_t>(terms.back());
  }
  Matrix m(g, cols);
  std::size_t col = 0;
  for (std::size_t j = 0; j < d.charts.size(); ++j) {
    for (int e = 0; e < terms[j]; ++e, ++col)
      for (std::size_t i = 0; i < g; ++i) m(i, col) = d.charts[j].forms[i].coeff(e);
  }
  for (const auto& row : d.fiber.ratios) {
    for (std::size_t i = 0; i < g; ++i) m(i, col) = row[i];
    ++col;
  }
  return m;
}

ValidationReport validate(const CoveringDatum& d) {
  ValidationReport rep;
  const bool shaped = shape_ok(d, rep);
  const int g = d.genus;

  // (1) Riemann-Hurwitz over an elliptic base.
  int ram = 0;
  for (const auto& c : d.charts) ram += c.index - 1;
  if (ram != 2 * g - 2)
    rep.findings.push_back({"riemann_hurwitz", ErrorCode::PreconditionFailed,
                            "sum (n_j - 1) = " + std::to_string(ram) + " but 2g - 2 = " + std::to_string(2 * g - 2)});
  if (g < 3)
    rep.findings.push_back({"genus", ErrorCode::PreconditionFailed,
                            "genus " + std::to_string(g) + " < 3; the canonical model needs g >= 3"});

  // (2) Chart valuations and precision.
  for (std::size_t j = 0; j < d.charts.size(); ++j) {
    const auto& c = d.charts[j];
    const std::string where = "chart " + std::to_string(j) + " (" + c.label + ")";
    if (c.index < 2) {
      rep.findings.push_back({"chart_index", ErrorCode::PreconditionFailed,
                              where + " has index " + std::to_string(c.index) + "; not a ramification point"});
      continue;
    }
    if (c.index > d.degree)
      rep.findings.push_back({"chart_index", ErrorCode::PreconditionFailed, where + " has index above the degree"});
    if (c.alpha_pullback.is_zero() && c.alpha_pullback.precision() <= c.index - 1)
      rep.findings.push_back({"chart_precision", ErrorCode::InsufficientPrecision,
                              where + ": pullback of alpha is truncated before its leading term u^" +
                                  std::to_string(c.index - 1)});
    else if (c.alpha_pullback.is_zero() || c.alpha_pullback.valuation() != c.index - 1)
      rep.findings.push_back({"chart_valuations", ErrorCode::InvalidValuation,
                              where + ": pullback of alpha must vanish to order exactly " +
                                  std::to_string(c.index - 1)});
    for (std::size_t i = 0; i < c.forms.size(); ++i)
      if (c.forms[i].valuation() < 0)
        rep.findings.push_back({"chart_valuations", ErrorCode::InvalidValuation,
                                where + ": form " + std::to_string(i) + " has a pole"});
    const int t = chart_terms(c);
    rep.chart_precision.push_back(t);
    if (c.alpha_pullback.precision() < t)
      rep.findings.push_back({"chart_precision", ErrorCode::InsufficientPrecision,
                              where + ": pullback of alpha known to O(u^" +
                                  std::to_string(c.alpha_pullback.precision()) + "), forms to O(u^" +
                                  std::to_string(t) + ")"});
  }

  if (!shaped) return rep;

  long count = static_cast<long>(d.fiber.ratios.size());
  for (int t : rep.chart_precision) count += t;
  rep.coefficient_count = static_cast<int>(std::min<long>(count, TruncatedSeries::kExact));

  // (3) Independence of the basis, certified by zero counting.
  if (count <= 2L * g - 2) {
    rep.findings.push_back({"independence", ErrorCode::InsufficientPrecision,
                            std::to_string(count) + " known coefficients cannot certify independence (need > " +
                                std::to_string(2 * g - 2) + ")"});
  } else {
    const std::size_t r = rank(coefficient_matrix(d));
    if (r < static_cast<std::size_t>(g))
      rep.findings.push_back({"independence", ErrorCode::DimensionMismatch,
                              "basis differentials are linearly dependent (rank " + std::to_string(r) + " < " +
                                  std::to_string(g) + ")"});
    else
      rep.independence_certified = true;
  }

  // (4) Enough coefficients to certify quadrics.
  if (count < 4L * g - 3)
    rep.findings.push_back({"quadric_precision", ErrorCode::InsufficientPrecision,
                            std::to_string(count) + " known coefficients; quadric certificate needs " +
                                std::to_string(4 * g - 3)});
  else
    rep.quadric_certified = true;

  // (5) Trace consistency.
  Vector tau(static_cast<std::size_t>(g));
  for (const auto& row : d.fiber.ratios)
    for (std::size_t i = 0; i < tau.size(); ++i) tau[i] += row[i];
  if (is_zero(tau)) rep.findings.push_back({"trace", ErrorCode::PreconditionFailed, "trace vector is zero"});
  if (d.alpha_index_hint) {
    const std::size_t h = *d.alpha_index_hint;
    if (tau[h] != Scalar(static_cast<long>(d.degree)))
      rep.findings.push_back({"trace", ErrorCode::PreconditionFailed,
                              "trace of the hinted pullback is " + tau[h].to_string() + ", expected the degree " +
                                  std::to_string(d.degree)});
    for (std::size_t k = 0; k < d.fiber.ratios.size(); ++k)
      if (!d.fiber.ratios[k][h].is_one())
        rep.findings.push_back({"trace", ErrorCode::PreconditionFailed,
                                "ratio of the hinted pullback at fiber point " + std::to_string(k) + " is not 1"});
  }
  return rep;
}

CoveringDatum reparametrize_chart(const CoveringDatum& datum, std::size_t chart, const TruncatedSeries& unit) {
  if (chart >= datum.charts.size()) throw Error(ErrorCode::DimensionMismatch, "chart index out of range");
  if (unit.is_zero() || unit.valuation() != 0)
    throw Error(ErrorCode::InvalidValuation, "reparametrization needs a unit series");
  const TruncatedSeries u = unit.shifted(1);
  const TruncatedSeries du = u.derivative();
  CoveringDatum out = datum;
  auto& c = out.charts[chart];
  auto transform = [&](const TruncatedSeries& f) {
    TruncatedSeries r = f.compose(u) * du;
    return r.truncated(f.precision());
  };
  c.alpha_pullback = transform(c.alpha_pullback);
  for (auto& f : c.forms) f = transform(f);
  return out;
}

CoveringDatum change_basis(const CoveringDatum& datum, const Matrix& B) {
  const std::size_t g = static_cast<std::size_t>(datum.genus);
  if (B.rows() != g || B.cols() != g) throw Error(ErrorCode::DimensionMismatch, "basis change must be g x g");
  if (rank(B) != g) throw Error(ErrorCode::DivisionByZero, "basis change is singular");
  CoveringDatum out = datum;
  for (std::size_t j = 0; j < datum.charts.size(); ++j)
    for (std::size_t i = 0; i < g; ++i) {
      TruncatedSeries s = TruncatedSeries::zero(datum.charts[j].forms[0].precision());
      for (std::size_t k = 0; k < g; ++k)
        if (!B(i, k).is_zero()) s = s + datum.charts[j].forms[k] * B(i, k);
      out.charts[j].forms[i] = s;
    }
  for (std::size_t k = 0; k < datum.fiber.ratios.size(); ++k) out.fiber.ratios[k] = B * datum.fiber.ratios[k];
  out.alpha_index_hint.reset();
  if (datum.alpha_index_hint)
    for (std::size_t i = 0; i < g; ++i)
      if (B.row(i) == unit_vector(g, *datum.alpha_index_hint)) out.alpha_index_hint = i;
  for (std::size_t i = 0; i < g; ++i) out.basis_names[i] = "b" + std::to_string(i);
  return out;
}

// ---------------------------------------------------------------------------
// JSON

Json to_json(const Scalar& s) { return s.to_string(); }

Json to_json(const TruncatedSeries& f) {
  Json j;
  j["valuation"] = f.valuation();
  j["prec"] = f.precision();
  Json coeffs = Json::array();
  if (!f.is_exact()) {
    for (int e = f.valuation(); e < f.precision(); ++e) coeffs.push_back(f.coeff(e).to_string());
  } else {
    for (const auto& c : f.stored()) coeffs.push_back(c.to_string());
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s.to_string());
  return a;
}

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

Json to_json(const CoveringDatum& d) {
  Json j;
  j["field"] = Json{{"cyclotomic_order", d.field.order()}};
  j["genus"] = d.genus;
  j["degree"] = d.degree;
  j["basis_names"] = d.basis_names;
  j["alpha_index_hint"] = d.alpha_index_hint ? Json(*d.alpha_index_hint) : Json(nullptr);
  Json charts = Json::array();
  for (const auto& c : d.charts) {
    Json cj;
    cj["label"] = c.label;
    cj["index"] = c.index;
    cj["alpha_pullback"] = to_json(c.alpha_pullback);
    Json forms = Json::array();
    for (const auto& f : c.forms) forms.push_back(to_json(f));
    cj["forms"] = std::move(forms);
    charts.push_back(std::move(cj));
  }
  j["charts"] = std::move(charts);
  Json fiber;
  fiber["labels"] = d.fiber.labels;
  Json ratios = Json::array();
  for (const auto& row : d.fiber.ratios) ratios.push_back(to_json(row));
  fiber["ratios"] = std::move(ratios);
  if (d.fiber.base_point)
    fiber["base_point"] = Json{{"x", (*d.fiber.base_point)[0].to_string()}, {"y", (*d.fiber.base_point)[1].to_string()}};
  j["fiber"] = std::move(fiber);
  return j;
}


[[noreturn]] void schema_error(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? std::string("/") : pointer) + ": " + what);
}

const Json& json_member(const Json& j, const std::string& pointer, const char* key) {
  if (!j.is_object()) schema_error(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_error(pointer + "/" + key, "missing required member");
  return *it;
}

int json_int(const Json& j, const std::string& pointer) {
  if (!j.is_number_integer()) schema_error(pointer, "expected an integer");
  const auto v = j.get<long long>();
  if (v < -TruncatedSeries::kExact || v > TruncatedSeries::kExact) schema_error(pointer, "integer out of range");
  return static_cast<int>(v);
}

std::string json_string(const Json& j, const std::string& pointer) {
  if (!j.is_string()) schema_error(pointer, "expected a string");
  return j.get<std::string>();
}

const Json& json_array(const Json& j, const std::string& pointer) {
  if (!j.is_array()) schema_error(pointer, "expected an array");
  return j;
}

std::vector<std::string> json_string_list(const Json& j, const std::string& pointer) {
  std::vector<std::string> out;
  const Json& a = json_array(j, pointer);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(json_string(a[i], pointer + "/" + std::to_string(i)));
  return out;
}


Scalar scalar_from_json(const Json& j, const FieldSpec& field, const std::string& pointer) {
  const std::string text = json_string(j, pointer);
  try {
    return Scalar::parse(text, field);
  } catch (const Error& e) {
    throw Error(e.code(), pointer + ": " + e.what());
  }
}

TruncatedSeries series_from_json(const Json& j, const FieldSpec& field, const std::string& pointer) {
  const int v = json_int(json_member(j, pointer, "valuation"), pointer + "/valuation");
  const int p = json_int(json_member(j, pointer, "prec"), pointer + "/prec");
  const Json& cj = json_array(json_member(j, pointer, "coeffs"), pointer + "/coeffs");
  if (p < v) schema_error(pointer + "/prec", "precision below valuation");
  std::vector<Scalar> coeffs;
  for (std::size_t i = 0; i < cj.size(); ++i)
    coeffs.push_back(scalar_from_json(cj[i], field, pointer + "/coeffs/" + std::to_string(i)));
  const bool exact = p >= TruncatedSeries::kExact / 2;
  if (!exact && static_cast<long>(coeffs.size()) != static_cast<long>(p) - v)
    schema_error(pointer + "/coeffs", "expected " + std::to_string(p - v) + " coefficients for exponents " +
                                          std::to_string(v) + ".." + std::to_string(p - 1));
  if (!coeffs.empty() && coeffs.front().is_zero())
    schema_error(pointer + "/coeffs/0", "leading coefficient must be nonzero");
  return TruncatedSeries::from_coefficients(v, std::move(coeffs), p);
}

CoveringDatum datum_from_json(const Json& j) {
  CoveringDatum d;
  const Json& fj = json_member(j, "", "field");
  const int order = json_int(json_member(fj, "/field", "cyclotomic_order"), "/field/cyclotomic_order");
  try {
    d.field = FieldSpec(order);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("/field/cyclotomic_order: ") + e.what());
  }
  d.genus = json_int(json_member(j, "", "genus"), "/genus");
  d.degree = json_int(json_member(j, "", "degree"), "/degree");
  d.basis_names = json_string_list(json_member(j, "", "basis_names"), "/basis_names");
  const Json& hint = json_member(j, "", "alpha_index_hint");
  if (!hint.is_null()) {
    const int h = json_int(hint, "/alpha_index_hint");
    if (h < 0) schema_error("/alpha_index_hint", "must be a non-negative index or null");
    d.alpha_index_hint = static_cast<std::size_t>(h);
  }
  const Json& charts = json_array(json_member(j, "", "charts"), "/charts");
  for (std::size_t c = 0; c < charts.size(); ++c) {
    const std::string ptr = "/charts/" + std::to_string(c);
    RamificationChart chart;
    chart.label = json_string(json_member(charts[c], ptr, "label"), ptr + "/label");
    chart.index = json_int(json_member(charts[c], ptr, "index"), ptr + "/index");
    chart.alpha_pullback = series_from_json(json_member(charts[c], ptr, "alpha_pullback"), d.field, ptr + "/alpha_pullback");
    const Json& forms = json_array(json_member(charts[c], ptr, "forms"), ptr + "/forms");
    for (std::size_t i = 0; i < forms.size(); ++i)
      chart.forms.push_back(series_from_json(forms[i], d.field, ptr + "/forms/" + std::to_string(i)));
    d.charts.push_back(std::move(chart));
  }
  const Json& fiber = json_member(j, "", "fiber");
  d.fiber.labels = json_string_list(json_member(fiber, "/fiber", "labels"), "/fiber/labels");
  const Json& ratios = json_array(json_member(fiber, "/fiber", "ratios"), "/fiber/ratios");
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    const std::string ptr = "/fiber/ratios/" + std::to_string(k);
    const Json& row = json_array(ratios[k], ptr);
    Vector v;
    for (std::size_t i = 0; i < row.size(); ++i)
      v.push_back(scalar_from_json(row[i], d.field, ptr + "/" + std::to_string(i)));
    d.fiber.ratios.push_back(std::move(v));
  }
  if (fiber.is_object() && fiber.contains("base_point")) {
    const Json& bp = fiber["base_point"];
    d.fiber.base_point = std::array<Scalar, 2>{
        scalar_from_json(json_member(bp, "/fiber/base_point", "x"), d.field, "/fiber/base_point/x"),
        scalar_from_json(json_member(bp, "/fiber/base_point", "y"), d.field, "/fiber/base_point/y")};
  }
  return d;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path);
}

std::string to_json_string(const CoveringDatum& datum) { return to_json(datum).dump(2) + "\n"; }

CoveringDatum from_json_string(const std::string& text) { return datum_from_json(parse_json(text, "covering datum")); }

CoveringDatum load(const std::string& path) { return from_json_string(read_text_file(path)); }

void save(const CoveringDatum& datum, const std::string& path) { write_text_file(path, to_json_string(datum)); }

}  // namespace prymker
