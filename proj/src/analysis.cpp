#include "prymker/analysis.hpp"

#include <sstream>

namespace prymker {

int exit_code_for(ErrorCode code) { return is_identity_violation(code) ? kExitIdentity : kExitInput; }

PipelineResults run_pipeline(const CoveringDatum& d) {
  PipelineResults r;
  r.validation = validate(d);
  if (!r.validation.ok()) {
    const Finding* pick = &r.validation.findings.front();
    for (const auto& f : r.validation.findings)
      if (f.code == ErrorCode::InsufficientPrecision) {
        pick = &f;
        break;
      }
    throw Error(pick->code, pick->check + ": " + pick->message);
  }
  r.table = product_table(d);
  r.split = trace_split(d);
  r.frame = canonical_frame(r.split);
  r.quadrics = quadric_kernel(d, r.table);
  r.cm = codifferential_matrix(r.table, r.split);
  r.kernel = kernel_E(d, r.cm);
  r.criterion = kernel_full(r.table, r.cm, r.kernel);
  return r;
}

namespace {

std::string quadric_string(const SymSquareElement& e) {
  const std::size_t g = e.genus();
  const Vector c = e.lex();
  std::string s;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    const auto [i, j] = lex_pair(k, g);
    const std::string mono =
        i == j ? "eta" + std::to_string(i) + "^2" : "eta" + std::to_string(i) + "*eta" + std::to_string(j);
    std::string coef;
    bool negative = false;
    if (c[k].is_rational()) {
      mpq_class q = c[k].rational();
      negative = sgn(q) < 0;
      q = abs(q);
      if (q != 1) coef = q.get_str() + "*";
    } else {
      coef = "(" + c[k].to_string() + ")*";
    }
    if (s.empty())
      s = negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    s += coef + mono;
  }
  return s.empty() ? "0" : s;
}

Json dims_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json identity_json(const std::string& name, const std::string& statement, long lhs, long rhs) {
  return Json{{"name", name}, {"statement", statement}, {"lhs", lhs}, {"rhs", rhs}, {"holds", lhs == rhs}};
}

Json conventions() {
  return Json::array({
      "residues and fiber sums carry no 2*pi*i factor; only vanishing, ranks and exact ratios are compared",
      "the base form is alpha = dx/y; kernel dimensions do not depend on rescaling it",
      "quadrics are written in lexicographic coordinates: c_ij is the coefficient of eta_i*eta_j",
      "for an action of order 3 the generator is replaced by its square whenever that makes the "
      "rho-eigenspace of H0(omega_F) the larger nontrivial one",
  });
}

Json findings_json(const std::vector<Finding>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(Json{{"check", f.check}, {"code", to_string(f.code)}, {"message", f.message}});
  return a;
}

}  // namespace

AnalysisOutcome analyze(const CoveringDatum& d, const std::optional<CyclicAction>& action) {
  AnalysisOutcome out;
  Json& rep = out.report;
  rep["conventions"] = conventions();
  const int n = static_cast<int>(d.charts.size());
  rep["datum"] = Json{{"genus", d.genus},
                      {"degree", d.degree},
                      {"branch_points", n},
                      {"deg_Rbar", d.reduced_ramification_degree()},
                      {"field", "Q(zeta_" + std::to_string(d.field.order()) + ")"},
                      {"basis", d.basis_names}};
  rep["error"] = nullptr;

  auto fail = [&](const Error& e) {
    rep["error"] = Json{{"code", to_string(e.code())}, {"message", e.what()}};
    out.exit_code = exit_code_for(e.code());
  };

  const ValidationReport vr = validate(d);
  rep["validation"] = Json{{"ok", vr.ok()},
                           {"coefficient_count", vr.coefficient_count},
                           {"chart_terms", vr.chart_precision},
                           {"independence_certified", vr.independence_certified},
                           {"quadric_certified", vr.quadric_certified},
                           {"findings", findings_json(vr.findings)}};
  try {
    out.results = run_pipeline(d);
  } catch (const Error& e) {
    fail(e);
    rep["exit_code"] = out.exit_code;
    return out;
  }
  const PipelineResults& r = *out.results;
  const long g = d.genus;

  try {
    Json k;
    k["dim_ker_dPE_dual"] = r.kernel.dimension();
    k["identities"] = Json::array({
        identity_json("kernel_dimension", "dim Ker dP_E^dual = g(g-1)/2 - n + 1",
                      static_cast<long>(r.kernel.dimension()), g * (g - 1) / 2 - n + 1),
        identity_json("kernel_E_one_dimensional", "dim Ker dP_E = n - rank(residue block) = 1",
                      static_cast<long>(r.kernel.dim_ker_dPE), 1),
    });
    k["residue_rank"] = r.kernel.residue_rank;
    rep["kernel_E"] = std::move(k);

    Json q;
    q["h0_quadrics"] = r.quadrics.dimension();
    q["identity"] = identity_json("quadric_count", "h0(I_F(2)) = (g-2)(g-3)/2",
                                  static_cast<long>(r.quadrics.dimension()), (g - 2) * (g - 3) / 2);
    Json basis = Json::array();
    for (const auto& G : r.quadrics.basis) basis.push_back(quadric_string(G));
    q["basis"] = std::move(basis);
    rep["quadrics"] = std::move(q);

    out.ledger = dimension_ledger(d, r.table, r.split, r.frame, r.quadrics, r.kernel);
    const LedgerReport& L = *out.ledger;
    Json led = Json::array();
    for (const auto& i : L.identities) led.push_back(identity_json(i.name, i.statement, i.lhs, i.rhs));
    rep["ledger"] = Json{{"h0_quadrics", L.h0_quadrics},
                         {"dim_ker_dPE_dual", L.dim_ker_E},
                         {"deg_Rbar", L.deg_rbar},
                         {"multiplication_rank", L.multiplication_rank},
                         {"residue_rank", L.residue_rank},
                         {"dim_ker_dh", L.dim_ker_dh},
                         {"identities", std::move(led)}};

    const auto entries = functpoint_check(r.table, r.split, r.frame, r.quadrics);
    Json dual = Json::array();
    for (const auto& e : entries)
      dual.push_back(Json{{"quadric", e.quadric},
                          {"fiber_sum", e.lhs.to_string()},
                          {"value_at_qminus", e.rhs.to_string()},
                          {"minus_trace_omega", (-e.trace_omega).to_string()},
                          {"agree", e.agree}});
    rep["dual_route"] = std::move(dual);

    const HalfGeoReport hg = halfgeo_criterion(r.frame, r.quadrics, r.criterion);
    rep["qminus"] = Json{{"coordinates", to_json(r.split.qminus)},
                         {"on_every_quadric", hg.qminus_in_all},
                         {"forces_dim_one", hg.implies_dim1}};

    const CriterionReport& c = r.criterion;
    Json cj;
    cj["verdict"] = c.dim_one ? "dim Ker dP = 1" : "dim Ker dP >= 2";
    cj["dim_ker_dP"] = c.dim_ker_dP;
    cj["dim_ker_dP_dual"] = c.dim_ker_dP_dual;
    cj["witness"] = c.witness ? Json(quadric_string(*c.witness)) : Json(nullptr);
    cj["witness_value"] = c.witness ? Json(c.witness_value.to_string()) : Json(nullptr);
    cj["nu_vanishes_on_kernel"] = c.nu_vanishes;
    cj["polarization_evaluations"] = c.basis_values.size() + c.pair_values.size();
    rep["criterion"] = std::move(cj);

    if (!L.all_hold()) {
      for (const auto& i : L.identities)
        if (!i.holds)
          throw Error(ErrorCode::IdentityViolated, i.name + ": " + i.statement + " (" + std::to_string(i.lhs) +
                                                       " vs " + std::to_string(i.rhs) + ")");
    }
  } catch (const Error& e) {
    fail(e);
  }

  if (action && out.exit_code == kExitOk) {
    Json eq;
    const auto findings = check_action(d, r.split, *action);
    eq["order"] = action->order;
    eq["findings"] = findings_json(findings);
    if (!findings.empty()) {
      const Finding& f = findings.front();
      fail(Error(f.code == ErrorCode::SchemaError ? ErrorCode::SchemaError : ErrorCode::ConsistencyViolated,
                 "action " + f.check + ": " + f.message));
    } else {
      try {
        const Eigenspaces eig = eigenspaces(d, *action);
        const Sym2Eigenspaces s2 = sym2_eigenspaces(d, *action, eig, r.split);
        eq["generator_power"] = eig.generator_power;
        eq["eigen_dims"] = dims_json(eig.dims());
        eq["sym2_dims"] = dims_json(s2.full_dims());
        eq["sym2_minus_dims"] = dims_json(s2.minus_dims());
        try {
          out.battery = pirola_battery(d, *action, r);
          Json checks = Json::array();
          for (const auto& ch : out.battery->checks)
            checks.push_back(Json{{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}});
          eq["battery"] = Json{{"checks", std::move(checks)}, {"all_pass", out.battery->all_pass()}};
        } catch (const Error& e) {
          if (e.code() != ErrorCode::PreconditionFailed) throw;
          eq["battery"] = Json{{"skipped", e.what()}};
        }
      } catch (const Error& e) {
        fail(e);
      }
    }
    rep["equivariant"] = std::move(eq);
  }
  rep["exit_code"] = out.exit_code;
  return out;
}

std::string render_text(const Json& rep) {
  std::ostringstream os;
  const Json& d = rep["datum"];
  os << "genus " << d["genus"].get<int>() << ", degree " << d["degree"].get<int>() << ", "
     << d["branch_points"].get<int>() << " ramification charts, deg Rbar = " << d["deg_Rbar"].get<int>() << ", field "
     << d["field"].get<std::string>() << "\n";
  os << "basis:";
  for (const auto& b : d["basis"]) os << "  " << b.get<std::string>();
  os << "\n";
  const Json& v = rep["validation"];
  os << "validation: " << (v["ok"].get<bool>() ? "ok" : "FAILED") << " (" << v["coefficient_count"].get<int>()
     << " certified coefficients)\n";
  for (const auto& f : v["findings"])
    os << "  " << f["code"].get<std::string>() << " [" << f["check"].get<std::string>()
       << "] " << f["message"].get<std::string>() << "\n";
  auto identity_line = [&](const Json& i) {
    os << "  [" << (i["holds"].get<bool>() ? "holds" : "FAILS") << "] " << i["statement"].get<std::string>() << ": "
       << i["lhs"].get<long>() << " = " << i["rhs"].get<long>() << "\n";
  };
  if (rep.contains("kernel_E")) {
    os << "dim Ker dP_E^dual = " << rep["kernel_E"]["dim_ker_dPE_dual"].get<std::size_t>() << "\n";
    for (const auto& i : rep["kernel_E"]["identities"]) identity_line(i);
  }
  if (rep.contains("quadrics")) {
    const Json& q = rep["quadrics"];
    os << "h0(I_F(2)) = " << q["h0_quadrics"].get<std::size_t>() << "\n";
    identity_line(q["identity"]);
    for (const auto& b : q["basis"]) os << "  quadric: " << b.get<std::string>() << "\n";
  }
  if (rep.contains("ledger")) {
    os << "dimension ledger:\n";
    for (const auto& i : rep["ledger"]["identities"]) identity_line(i);
  }
  if (rep.contains("dual_route")) {
    for (const auto& e : rep["dual_route"])
      os << "quadric " << e["quadric"].get<std::size_t>() << ": fiber sum " << e["fiber_sum"].get<std::string>()
         << ", G(q^-) = " << e["value_at_qminus"].get<std::string>() << ", -tau(omega_Q) = "
         << e["minus_trace_omega"].get<std::string>() << (e["agree"].get<bool>() ? " (agree)" : " (DISAGREE)") << "\n";
  }
  if (rep.contains("qminus"))
    os << "q^- on every quadric: " << (rep["qminus"]["on_every_quadric"].get<bool>() ? "yes" : "no") << "\n";
  if (rep.contains("criterion")) {
    const Json& c = rep["criterion"];
    os << "verdict: " << c["verdict"].get<std::string>();
    if (c["dim_ker_dP"].get<std::size_t>() != 1) os << " (dim Ker dP = " << c["dim_ker_dP"].get<std::size_t>() << ")";
    os << "\n";
    if (!c["witness"].is_null())
      os << "  witness " << c["witness"].get<std::string>() << " with nu = " << c["witness_value"].get<std::string>()
         << "\n";
    else
      os << "  nu vanishes on Ker dP_E^dual (" << c["polarization_evaluations"].get<std::size_t>()
         << " polarization evaluations)\n";
  }
  if (rep.contains("equivariant")) {
    const Json& eq = rep["equivariant"];
    os << "action of order " << eq["order"].get<int>();
    if (eq.contains("eigen_dims")) os << ": H0 dims " << eq["eigen_dims"].dump() << ", Sym^2 dims " << eq["sym2_dims"].dump()
                                      << ", Sym^2(H0^-) dims " << eq["sym2_minus_dims"].dump();
    os << "\n";
    if (eq.contains("battery")) {
      const Json& b = eq["battery"];
      if (b.contains("skipped")) {
        os << "  battery skipped: " << b["skipped"].get<std::string>() << "\n";
      } else {
        for (const auto& ch : b["checks"])
          os << "  " << (ch["pass"].get<bool>() ? "PASS " : "FAIL ") << ch["name"].get<std::string>() << ": "
             << ch["detail"].get<std::string>() << "\n";
      }
    }
  }
  if (!rep["error"].is_null()) os << "error: " << rep["error"]["message"].get<std::string>() << "\n";
  os << "notes:\n";
  for (const auto& c : rep["conventions"]) os << "  - " << c.get<std::string>() << "\n";
  return os.str();
}

CyclicCoverSpec pirola_spec(int precision) {
  CyclicCoverSpec s;
  s.A = 0;
  s.B = 1;
  s.P = {-1, -1};
  s.Q = {1};
  s.N = 3;
  s.precision = precision;
  return s;
}

CyclicCoverSpec bielliptic_g4_spec(int precision) {
  CyclicCoverSpec s;
  s.A = 0;
  s.B = 17;
  s.P = {-4, -4, 1, 1};  // (x + 2)(x + 1)(x - 2)
  s.N = 2;
  s.base_point = std::array<mpq_class, 2>{4, 9};
  s.precision = precision;
  return s;
}

CyclicCoverSpec bielliptic_g3_spec(int precision) {
  CyclicCoverSpec s;
  s.A = 0;
  s.B = 17;
  s.P = {-9, -4, 1};  // x^2 - 4x - 9 - y
  s.Q = {-1};
  s.N = 2;
  s.base_point = std::array<mpq_class, 2>{4, 9};
  s.precision = precision;
  return s;
}

DemoOutcome run_demo_pirola(int precision) {
  DemoOutcome out;
  Json& rep = out.report;
  std::ostringstream os;
  const CyclicCoverSpec spec = pirola_spec(precision);
  rep["fixture"] = Json{{"E", "y^2 = x^3 + 1"}, {"h", "y - x - 1"}, {"N", 3}, {"precision", precision}};
  os << "fixture: E: y^2 = x^3 + 1, h = y - x - 1, N = 3, precision " << precision << "\n";
  BuiltCover cover;
  try {
    cover = build_cover(spec);
  } catch (const Error& e) {
    rep["error"] = Json{{"code", to_string(e.code())}, {"message", e.what()}};
    out.exit_code = exit_code_for(e.code());
    rep["exit_code"] = out.exit_code;
    out.text = os.str() + "error: " + e.what() + "\n";
    return out;
  }
  rep["fixture"]["base_point"] = cover.base_point.to_string();
  rep["fixture"]["base_point_searched"] = cover.base_point_searched;
  rep["fixture"]["h_at_base_point"] = cover.h_at_base.to_string();
  os << "base point c = " << cover.base_point.to_string() << (cover.base_point_searched ? " (searched)" : "")
     << ", h(c) = " << cover.h_at_base.to_string() << "\n";

  AnalysisOutcome a = analyze(cover.datum, cover.action);
  rep["analysis"] = a.report;
  out.exit_code = a.exit_code;
  if (a.exit_code != kExitOk) {
    os << "error: " << a.report["error"]["message"].get<std::string>() << "\n";
  } else if (!a.battery) {
    out.exit_code = kExitIdentity;
    os << "error: battery did not run\n";
  } else {
    const auto& r = *a.results;
    os << "genus " << cover.datum.genus << ", dim Ker dP_E^dual = " << r.kernel.dimension() << ", h0(I_F(2)) = "
       << r.quadrics.dimension() << ", verdict: " << (r.criterion.dim_one ? "dim Ker dP = 1" : "dim Ker dP >= 2")
       << "\n";
    std::size_t passed = 0;
    for (const auto& c : a.battery->checks) {
      os << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
      passed += c.pass ? 1 : 0;
    }
    os << passed << "/" << a.battery->checks.size() << " checks passed\n";
    if (!a.battery->all_pass()) {
      out.exit_code = kExitIdentity;
      os << "a failing check first calls into question whether this fixture belongs to the intended family\n";
    }
  }
  rep["all_pass"] = out.exit_code == kExitOk;
  rep["exit_code"] = out.exit_code;
  out.text = os.str();
  return out;
}

}  // namespace prymker
