#include "prymker/builder.hpp"

#include <algorithm>

#include "prymker/json_io.hpp"

namespace prymker {

namespace {

mpq_class number_from_json(const Json& j, const std::string& pointer) {
  if (j.is_number_integer()) return mpq_class(j.get<long>());
  if (!j.is_string()) schema_error(pointer, "expected an integer or a rational string");
  const std::string text = j.get<std::string>();
  mpq_class q;
  const auto slash = text.find('/');
  if (text.empty() || q.set_str(text, 10) != 0 || (slash != std::string::npos && text.substr(slash + 1) == "0") ||
      (slash != std::string::npos && mpz_class(text.substr(slash + 1)) == 0))
    throw Error(ErrorCode::ParseError, pointer + ": '" + text + "' is not a rational number");
  q.canonicalize();
  return q;
}

std::vector<mpq_class> number_list(const Json& j, const std::string& pointer) {
  const Json& a = json_array(j, pointer);
  std::vector<mpq_class> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number_from_json(a[i], pointer + "/" + std::to_string(i)));
  return out;
}

Json number_to_json(const mpq_class& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return Json(q.get_num().get_si());
  return Json(q.get_str());
}

Poly to_poly(const std::vector<mpq_class>& c) {
  Poly p;
  for (const auto& q : c) p.push_back(Scalar(q));
  return poly_trim(std::move(p));
}

bool is_supported_order(int n) { return n == 2 || n == 3 || n == 5 || n == 7 || n == 11 || n == 13; }

struct DivisorClass {
  std::vector<DivisorEntry> branch;      // simple zeros of h
  std::vector<DivisorEntry> unramified;  // multiplicity divisible by N
};

DivisorClass classify(const Divisor& div, int N) {
  DivisorClass c;
  for (const auto& e : div) {
    if (e.multiplicity % N == 0)
      c.unramified.push_back(e);
    else if (e.multiplicity == 1)
      c.branch.push_back(e);
    else
      throw Error(ErrorCode::UnsupportedRamification,
                  "h has order " + std::to_string(e.multiplicity) + " at " + e.point.to_string() +
                      "; only simple zeros and orders divisible by N = " + std::to_string(N) + " are supported");
  }
  if (c.branch.empty())
    throw Error(ErrorCode::UnsupportedRamification, "h has no simple zero, so the cover is not branched");
  return c;
}

// Divisor D_k with L(D_k) = {f : f w^-k dx/y is holomorphic}.
Divisor form_divisor(const DivisorClass& c, int N, int k) {
  Divisor d;
  for (const auto& e : c.unramified) d.push_back({e.point, -k * e.multiplicity / N});
  return d;
}

struct ChartSeries {
  TruncatedSeries alpha;
  std::vector<TruncatedSeries> forms;
};

ChartSeries chart_series(const EllipticCurve& E, const CurveFunction& hn, const CurvePoint& b, int N,
                         const std::vector<int>& chars, const std::vector<CurveFunction>& funcs, int P) {
  const int base = (P + N + N - 1) / N + 4;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const BranchChart bc = branch_chart(E, hn, b, N, base + attempt * ((P + N - 1) / N + 2));
    ChartSeries cs;
    cs.alpha = bc.alpha;
    int reached = cs.alpha.precision();
    for (std::size_t i = 0; i < funcs.size(); ++i) {
      cs.forms.push_back(funcs[i].expand(bc.x, bc.y) * TruncatedSeries::monomial(Scalar(1), -chars[i]) * cs.alpha);
      reached = std::min(reached, cs.forms.back().precision());
    }
    if (reached >= P) {
      cs.alpha = cs.alpha.truncated(P);
      for (auto& f : cs.forms) f = f.truncated(P);
      return cs;
    }
  }
  throw Error(ErrorCode::PrecisionUnreachable,
              "could not expand the forms at " + b.to_string() + " to O(u^" + std::to_string(P) + ")");
}

std::string form_name(const CurveFunction& f, int k) {
  if (k == 0) return "dx/y";
  const std::string w = "w^-" + std::to_string(k) + " dx/y";
  if (f == CurveFunction::constant(Scalar(1))) return w;
  return "(" + f.to_string() + ") * " + w;
}

}  // namespace

BranchChart branch_chart(const EllipticCurve& E, const CurveFunction& hn, const CurvePoint& b, int N, int prec) {
  const LocalExpansion le = local_expansion(E, b, prec);
  const TruncatedSeries psi = hn.expand(le.x, le.y).truncated(prec);
  if (psi.is_zero() || psi.valuation() != 1)
    throw Error(ErrorCode::ConsistencyViolated, "h is not a local parameter at the branch point " + b.to_string());
  // w = u with u^N = h / h(c), so t = psi^{-1}(u^N).
  const TruncatedSeries t = reversion(psi).substitute_power(N);
  BranchChart bc;
  bc.x = le.x.compose(t);
  bc.y = le.y.compose(t);
  bc.alpha = le.alpha.compose(t) * t.derivative();
  return bc;
}

CyclicCoverSpec parse_cover_spec(const std::string& text) {
  const Json j = parse_json(text, "cover spec");
  CyclicCoverSpec s;
  const Json& e = json_member(j, "", "E");
  s.A = number_from_json(json_member(e, "/E", "A"), "/E/A");
  s.B = number_from_json(json_member(e, "/E", "B"), "/E/B");
  const Json& h = json_member(j, "", "h");
  s.P = number_list(json_member(h, "/h", "P"), "/h/P");
  if (h.contains("Q")) s.Q = number_list(h["Q"], "/h/Q");
  s.N = json_int(json_member(j, "", "N"), "/N");
  if (j.contains("c")) {
    const Json& c = j["c"];
    if (c.is_string()) {
      if (c.get<std::string>() != "auto") schema_error("/c", "expected \"auto\" or an object {x, y}");
    } else {
      s.base_point = std::array<mpq_class, 2>{number_from_json(json_member(c, "/c", "x"), "/c/x"),
                                              number_from_json(json_member(c, "/c", "y"), "/c/y")};
    }
  }
  if (j.contains("precision")) {
    s.precision = json_int(j["precision"], "/precision");
    if (s.precision < 1) schema_error("/precision", "must be positive");
  }
  return s;
}

std::string cover_spec_to_json_string(const CyclicCoverSpec& s) {
  Json j;
  j["E"] = Json{{"A", number_to_json(s.A)}, {"B", number_to_json(s.B)}};
  Json p = Json::array(), q = Json::array();
  for (const auto& c : s.P) p.push_back(number_to_json(c));
  for (const auto& c : s.Q) q.push_back(number_to_json(c));
  j["h"] = Json{{"P", p}, {"Q", q}};
  j["N"] = s.N;
  if (s.base_point)
    j["c"] = Json{{"x", number_to_json((*s.base_point)[0])}, {"y", number_to_json((*s.base_point)[1])}};
  else
    j["c"] = "auto";
  j["precision"] = s.precision;
  return j.dump(2) + "\n";
}

std::optional<CurvePoint> search_base_point(const EllipticCurve& E, const CurveFunction& h) {
  const Poly f = E.cubic();
  for (long step = 0; step <= 200; ++step) {
    const long x = step % 2 == 0 ? -step / 2 : (step + 1) / 2;
    const Scalar fx = poly_eval(f, Scalar(x));
    mpq_class r;
    if (!fx.is_rational() || !rational_sqrt(fx.rational(), r)) continue;
    for (const mpq_class& y : {mpq_class(r), mpq_class(-r)}) {
      const CurvePoint c = CurvePoint::affine(Scalar(x), Scalar(y));
      if (!h.evaluate(c).is_zero()) return c;
      if (r == 0) break;
    }
  }
  return std::nullopt;
}

BuiltCover build_cover(const CyclicCoverSpec& spec) {
  const int N = spec.N;
  if (!is_supported_order(N))
    throw Error(ErrorCode::UnsupportedOrder, "N = " + std::to_string(N) + " must be a prime <= 13");
  if (spec.precision < 1) throw Error(ErrorCode::SchemaError, "/precision: must be positive");
  const EllipticCurve E{Scalar(spec.A), Scalar(spec.B)};
  const FieldSpec field(N == 2 ? 1 : N);
  const CurveFunction h{to_poly(spec.P), to_poly(spec.Q)};
  if (h.is_constant()) throw Error(ErrorCode::PreconditionFailed, "h must be a nonconstant function");

  BuiltCover out;
  out.divisor_h = divisor_of(E, h);
  const DivisorClass dc = classify(out.divisor_h, N);
  const int r = static_cast<int>(dc.branch.size());
  const int genus = 1 + (N - 1) * r / 2;

  if (spec.base_point) {
    out.base_point = CurvePoint::affine(Scalar((*spec.base_point)[0]), Scalar((*spec.base_point)[1]));
    if (!E.contains(out.base_point))
      throw Error(ErrorCode::PreconditionFailed, "base point " + out.base_point.to_string() + " is not on E");
  } else {
    const auto c = search_base_point(E, h);
    if (!c) throw Error(ErrorCode::PreconditionFailed, "no rational base point with |x| <= 100 and h(c) != 0");
    out.base_point = *c;
    out.base_point_searched = true;
  }
  out.h_at_base = h.evaluate(out.base_point);
  if (out.h_at_base.is_zero())
    throw Error(ErrorCode::PreconditionFailed, "h vanishes at the base point " + out.base_point.to_string());
  const CurveFunction hn = h.scaled(out.h_at_base.inverse());

  for (int k = 0; k < N; ++k) {
    for (auto& f : riemann_roch_basis(E, form_divisor(dc, N, k))) {
      out.characters.push_back(k);
      out.functions.push_back(std::move(f));
    }
  }
  if (static_cast<int>(out.functions.size()) != genus)
    throw Error(ErrorCode::DimensionMismatch, "found " + std::to_string(out.functions.size()) +
                                                  " holomorphic forms, expected genus " + std::to_string(genus));

  // Holomorphy from exact valuations: N v_b(f) - k v_b(h) + (e_b - 1) >= 0.
  for (std::size_t i = 0; i < out.functions.size(); ++i) {
    const int k = out.characters[i];
    for (const auto& e : out.divisor_h) {
      const int vf = valuation_at(E, out.functions[i], e.point);
      const int ram = e.multiplicity % N == 0 ? 0 : N - 1;
      if (N * vf - k * e.multiplicity + ram < 0)
        throw Error(ErrorCode::ConsistencyViolated,
                    "form " + std::to_string(i) + " has a pole over " + e.point.to_string());
    }
  }

  CoveringDatum& d = out.datum;
  d.field = field;
  d.genus = genus;
  d.degree = N;
  for (std::size_t i = 0; i < out.functions.size(); ++i)
    d.basis_names.push_back(form_name(out.functions[i], out.characters[i]));
  d.alpha_index_hint = 0;
  for (const auto& b : dc.branch) {
    const ChartSeries cs = chart_series(E, hn, b.point, N, out.characters, out.functions, spec.precision);
    for (std::size_t i = 0; i < cs.forms.size(); ++i)
      if (!cs.forms[i].is_zero() && cs.forms[i].valuation() < 0)
        throw Error(ErrorCode::ConsistencyViolated,
                    "form " + std::to_string(i) + " has a pole in the chart at " + b.point.to_string());
    d.charts.push_back({b.point.to_string(), N, cs.alpha, cs.forms});
  }

  const Scalar zeta = Scalar::root_of_unity(field, N);
  const Scalar zeta_inv = zeta.inverse();
  for (int m = 0; m < N; ++m) {
    d.fiber.labels.push_back(m == 0 ? "w = 1" : "w = zeta^" + std::to_string(m));
    Vector row;
    for (std::size_t i = 0; i < out.functions.size(); ++i)
      row.push_back(out.functions[i].evaluate(out.base_point) * zeta_inv.pow(static_cast<long>(out.characters[i]) * m));
    d.fiber.ratios.push_back(std::move(row));
  }
  d.fiber.base_point = std::array<Scalar, 2>{out.base_point.x, out.base_point.y};

  // Generator w -> zeta w: u -> zeta u on every chart, fiber point m -> m + 1.
  CyclicAction& a = out.action;
  a.order = N;
  a.matrix = Matrix(static_cast<std::size_t>(genus), static_cast<std::size_t>(genus));
  for (std::size_t i = 0; i < out.characters.size(); ++i) a.matrix(i, i) = zeta_inv.pow(out.characters[i]);
  for (std::size_t j = 0; j < d.charts.size(); ++j) a.chart_maps.push_back({j, TruncatedSeries::monomial(zeta, 1)});
  for (int m = 0; m < N; ++m) a.fiber_permutation.push_back(static_cast<std::size_t>((m + 1) % N));
  return out;
}

std::string action_to_json_string(const CyclicAction& a) {
  Json j;
  j["order"] = a.order;
  j["matrix"] = to_json(a.matrix);
  Json maps = Json::array();
  for (const auto& m : a.chart_maps) maps.push_back(Json{{"target", m.target}, {"reparam", to_json(m.reparam)}});
  j["chart_maps"] = std::move(maps);
  j["fiber_permutation"] = a.fiber_permutation;
  return j.dump(2) + "\n";
}

CyclicAction action_from_json_string(const std::string& text, const FieldSpec& field) {
  const Json j = parse_json(text, "action");
  CyclicAction a;
  a.order = json_int(json_member(j, "", "order"), "/order");
  const Json& rows = json_array(json_member(j, "", "matrix"), "/matrix");
  std::vector<Vector> m;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string p = "/matrix/" + std::to_string(r);
    const Json& row = json_array(rows[r], p);
    if (row.size() != rows.size()) schema_error(p, "action matrix must be square");
    Vector v;
    for (std::size_t c = 0; c < row.size(); ++c) v.push_back(scalar_from_json(row[c], field, p + "/" + std::to_string(c)));
    m.push_back(std::move(v));
  }
  a.matrix = Matrix::from_rows(m, rows.size());
  const Json& maps = json_array(json_member(j, "", "chart_maps"), "/chart_maps");
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const std::string p = "/chart_maps/" + std::to_string(i);
    const int target = json_int(json_member(maps[i], p, "target"), p + "/target");
    if (target < 0) schema_error(p + "/target", "must be nonnegative");
    a.chart_maps.push_back(
        {static_cast<std::size_t>(target), series_from_json(json_member(maps[i], p, "reparam"), field, p + "/reparam")});
  }
  const Json& perm = json_array(json_member(j, "", "fiber_permutation"), "/fiber_permutation");
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int v = json_int(perm[i], "/fiber_permutation/" + std::to_string(i));
    if (v < 0) schema_error("/fiber_permutation/" + std::to_string(i), "must be nonnegative");
    a.fiber_permutation.push_back(static_cast<std::size_t>(v));
  }
  return a;
}

}  // namespace prymker
