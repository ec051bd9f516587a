#include "prymker/equivariant.hpp"

#include <algorithm>
#include <numeric>

namespace prymker {

CyclicAction trivial_action(const CoveringDatum& d) {
  CyclicAction a;
  a.order = 1;
  a.matrix = Matrix::identity(static_cast<std::size_t>(d.genus));
  for (std::size_t j = 0; j < d.charts.size(); ++j)
    a.chart_maps.push_back({j, TruncatedSeries::monomial(Scalar(1), 1)});
  a.fiber_permutation.resize(d.fiber.ratios.size());
  std::iota(a.fiber_permutation.begin(), a.fiber_permutation.end(), std::size_t{0});
  return a;
}

Matrix generator_matrix(const CyclicAction& action, int power) {
  Matrix m = Matrix::identity(action.matrix.rows());
  for (int i = 0; i < power; ++i) m = m * action.matrix;
  return m;
}

namespace {

bool permutation_ok(const std::vector<std::size_t>& p, std::size_t size, int order) {
  if (p.size() != size) return false;
  std::vector<bool> seen(size, false);
  for (std::size_t v : p) {
    if (v >= size || seen[v]) return false;
    seen[v] = true;
  }
  for (std::size_t k = 0; k < size; ++k) {
    std::size_t x = k;
    for (int i = 0; i < order; ++i) x = p[x];
    if (x != k) return false;
  }
  return true;
}

// The chart expansion of g^* eta, for eta with expansion f at the target chart.
TruncatedSeries pull_back(const TruncatedSeries& f, const TruncatedSeries& reparam, int weight) {
  TruncatedSeries r = f.compose(reparam);
  const TruncatedSeries d = reparam.derivative();
  for (int i = 0; i < weight; ++i) r = r * d;
  return r;
}

Scalar character(const FieldSpec& field, int order, int e) {
  return Scalar::root_of_unity(field, order).pow(e);
}

}  // namespace

std::vector<Finding> check_action(const CoveringDatum& d, const TraceSplit& split, const CyclicAction& a) {
  std::vector<Finding> out;
  const std::size_t g = static_cast<std::size_t>(d.genus);
  auto fail = [&](std::string check, ErrorCode code, std::string msg) {
    out.push_back({std::move(check), code, std::move(msg)});
  };
  if (a.order < 1) {
    fail("action_order", ErrorCode::SchemaError, "order must be positive");
    return out;
  }
  if (a.matrix.rows() != g || a.matrix.cols() != g) {
    fail("action_shape", ErrorCode::SchemaError, "action matrix must be g x g");
    return out;
  }
  if (generator_matrix(a, a.order) != Matrix::identity(g))
    fail("action_order", ErrorCode::ConsistencyViolated, "(g^*)^N is not the identity");
  if (a.matrix.transpose() * split.alpha_coords != split.alpha_coords)
    fail("action_fixes_alpha", ErrorCode::ConsistencyViolated, "generator does not fix pi^* alpha");
  if (!permutation_ok(a.fiber_permutation, d.fiber.ratios.size(), a.order)) {
    fail("fiber_permutation", ErrorCode::SchemaError, "fiber permutation is invalid or of the wrong order");
  } else {
    for (std::size_t k = 0; k < d.fiber.ratios.size(); ++k)
      if (a.matrix * d.fiber.ratios[k] != d.fiber.ratios[a.fiber_permutation[k]])
        fail("fiber_compatibility", ErrorCode::ConsistencyViolated,
             "ratios at fiber point " + std::to_string(k) + " do not transform by the action matrix");
  }
  std::vector<std::size_t> targets;
  for (const auto& m : a.chart_maps) targets.push_back(m.target);
  if (!permutation_ok(targets, d.charts.size(), a.order)) {
    fail("chart_permutation", ErrorCode::SchemaError, "chart permutation is invalid or of the wrong order");
    return out;
  }
  for (std::size_t j = 0; j < d.charts.size(); ++j) {
    const ChartMap& m = a.chart_maps[j];
    if (m.reparam.is_zero() || m.reparam.valuation() != 1) {
      fail("chart_compatibility", ErrorCode::InvalidValuation, "reparametrization of chart " + std::to_string(j) +
                                                                   " is not a local parameter");
      continue;
    }
    const auto& src = d.charts[j];
    const auto& dst = d.charts[m.target];
    if (src.index != dst.index)
      fail("chart_compatibility", ErrorCode::ConsistencyViolated, "chart " + std::to_string(j) +
                                                                      " is mapped to a chart of another index");
    const int t = std::min(chart_terms(src), chart_terms(dst));
    const TruncatedSeries alpha = pull_back(dst.alpha_pullback, m.reparam, 1).truncated(t);
    if (alpha != src.alpha_pullback.truncated(t))
      fail("chart_compatibility", ErrorCode::ConsistencyViolated,
           "pi^* alpha is not invariant on chart " + std::to_string(j));
    for (std::size_t i = 0; i < g; ++i) {
      TruncatedSeries lhs = TruncatedSeries::zero(t);
      for (std::size_t k = 0; k < g; ++k)
        if (!a.matrix(i, k).is_zero()) lhs = lhs + src.forms[k] * a.matrix(i, k);
      const TruncatedSeries rhs = pull_back(dst.forms[i], m.reparam, 1).truncated(t);
      if (lhs.truncated(t) != rhs)
        fail("chart_compatibility", ErrorCode::ConsistencyViolated,
             "form " + std::to_string(i) + " does not transform by the action on chart " + std::to_string(j));
    }
  }
  return out;
}

std::vector<std::size_t> Eigenspaces::dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : spaces) out.push_back(s.size());
  return out;
}

namespace {

std::vector<std::vector<Vector>> split_by_character(const Matrix& act, const FieldSpec& field, int order) {
  // Eigenvectors v with act v = zeta^e v.
  std::vector<std::vector<Vector>> spaces;
  const std::size_t n = act.rows();
  std::size_t total = 0;
  for (int e = 0; e < order; ++e) {
    Matrix m = act;
    const Scalar chi = character(field, order, e);
    for (std::size_t i = 0; i < n; ++i) m(i, i) -= chi;
    spaces.push_back(kernel_basis(m));
    total += spaces.back().size();
  }
  if (total != n)
    throw Error(ErrorCode::ConsistencyViolated, "action is not diagonalizable with N-th root of unity eigenvalues");
  return spaces;
}

}  // namespace

Eigenspaces eigenspaces(const CoveringDatum& d, const CyclicAction& a) {
  if (!d.field.has_root_of_unity(a.order))
    throw Error(ErrorCode::FieldTooSmall, "field Q(zeta_" + std::to_string(d.field.order()) +
                                              ") lacks the roots of unity of order " + std::to_string(a.order));
  Eigenspaces e;
  e.order = a.order;
  e.spaces = split_by_character(generator_matrix(a, 1).transpose(), d.field, a.order);
  if (a.order == 3 && e.spaces[1].size() < e.spaces[2].size()) {
    e.generator_power = 2;
    e.spaces = split_by_character(generator_matrix(a, 2).transpose(), d.field, a.order);
  }
  return e;
}

Matrix sym2_action(const Matrix& action) {
  const std::size_t g = action.rows();
  const std::size_t s = sym2_dimension(g);
  Matrix out(s, s);
  for (std::size_t k = 0; k < s; ++k) {
    const Vector col = SymSquareElement::from_lex(unit_vector(s, k), g).transformed(action).lex();
    for (std::size_t r = 0; r < s; ++r) out(r, k) = col[r];
  }
  return out;
}

std::vector<std::size_t> Sym2Eigenspaces::full_dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : full) out.push_back(s.size());
  return out;
}

std::vector<std::size_t> Sym2Eigenspaces::minus_dims() const {
  std::vector<std::size_t> out;
  for (const auto& s : minus) out.push_back(s.size());
  return out;
}

Sym2Eigenspaces sym2_eigenspaces(const CoveringDatum& d, const CyclicAction& a, const Eigenspaces& eig,
                                 const TraceSplit& split) {
  const std::size_t g = static_cast<std::size_t>(d.genus);
  Sym2Eigenspaces out;
  out.full = split_by_character(sym2_action(generator_matrix(a, eig.generator_power)), d.field, a.order);
  std::size_t minus_total = 0;
  for (const auto& space : out.full) {
    // Combinations of the eigenvectors whose tensor kills q^-.
    std::vector<SymSquareElement> elems;
    for (const auto& v : space) elems.push_back(SymSquareElement::from_lex(v, g));
    std::vector<Vector> sub;
    if (!elems.empty()) {
      Matrix k(g, elems.size());
      for (std::size_t c = 0; c < elems.size(); ++c) {
        const Vector col = elems[c].matrix() * split.qminus;
        for (std::size_t r = 0; r < g; ++r) k(r, c) = col[r];
      }
      for (const auto& x : kernel_basis(k)) {
        Vector lexv(sym2_dimension(g));
        for (std::size_t c = 0; c < x.size(); ++c)
          if (!x[c].is_zero()) lexv = add(lexv, scaled(space[c], x[c]));
        sub.push_back(std::move(lexv));
      }
    }
    minus_total += sub.size();
    out.minus.push_back(std::move(sub));
  }
  if (minus_total != split.minus_basis.size() * (split.minus_basis.size() + 1) / 2)
    throw Error(ErrorCode::ConsistencyViolated, "eigenspaces of Sym^2(H0^-) do not add up");
  return out;
}

QuadDifferentialData transported_multiply(const ProductTable& t, const CyclicAction& a, const SymSquareElement& phi) {
  const QuadDifferentialData base = multiply(t, phi);
  QuadDifferentialData out;
  for (std::size_t j = 0; j < base.charts.size(); ++j) {
    const ChartMap& m = a.chart_maps.at(j);
    out.charts.push_back(pull_back(base.charts[m.target], m.reparam, 2).truncated(t.terms[j]));
  }
  out.fiber = zero_vector(base.fiber.size());
  for (std::size_t k = 0; k < base.fiber.size(); ++k) out.fiber[k] = base.fiber[a.fiber_permutation.at(k)];
  return out;
}

bool BatteryReport::all_pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const BatteryCheck& c) { return c.pass; });
}

namespace {

std::string dims_text(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

// Canonical image of a chart point: the lowest nonvanishing coefficient vector.
Vector chart_point(const RamificationChart& c) {
  int low = TruncatedSeries::kExact;
  for (const auto& f : c.forms)
    if (!f.is_zero()) low = std::min(low, f.valuation());
  Vector v;
  for (const auto& f : c.forms) v.push_back(f.coeff(low));
  return v;
}

}  // namespace

BatteryReport pirola_battery(const CoveringDatum& d, const CyclicAction& a, const PipelineResults& res) {
  if (d.genus != 4) throw Error(ErrorCode::PreconditionFailed, "battery needs genus 4");
  if (a.order != 3) throw Error(ErrorCode::PreconditionFailed, "battery needs an action of order 3");
  if (d.degree != 3 || d.charts.size() != 3)
    throw Error(ErrorCode::PreconditionFailed, "battery needs a degree-3 cover branched at three points");
  if (a.fiber_permutation.size() != 3 || a.fiber_permutation[0] == 0)
    throw Error(ErrorCode::PreconditionFailed, "fiber is not a single orbit; the cover is not Galois of degree 3");
  const auto findings = check_action(d, res.split, a);
  if (!findings.empty())
    throw Error(ErrorCode::PreconditionFailed, "action is inconsistent: " + findings.front().message);

  const std::size_t g = 4;
  BatteryReport rep;
  const Eigenspaces eig = eigenspaces(d, a);
  const Sym2Eigenspaces s2 = sym2_eigenspaces(d, a, eig, res.split);
  rep.eigen_dims = eig.dims();
  rep.sym2_dims = s2.full_dims();
  rep.sym2_minus_dims = s2.minus_dims();
  rep.generator_power = eig.generator_power;
  const Matrix act2 = sym2_action(generator_matrix(a, eig.generator_power));
  const std::size_t s = sym2_dimension(g);

  // (1) One quadric, in a single nontrivial isotypic component.
  {
    BatteryCheck c{"unique_quadric_isotype", false, ""};
    if (res.quadrics.dimension() != 1) {
      c.detail = "h0(I_F(2)) = " + std::to_string(res.quadrics.dimension());
    } else {
      const Vector q = res.quadrics.basis[0].lex();
      int found = -1;
      for (int e = 0; e < 3; ++e)
        if (act2 * q == scaled(q, character(d.field, 3, e))) found = e;
      c.pass = found == 1 || found == 2;
      c.detail = "h0(I_F(2)) = 1; quadric character " +
                 (found < 0 ? std::string("mixed") : found == 0 ? std::string("trivial") : "rho^" + std::to_string(found)) +
                 "; invariant part " + (found > 0 ? "0" : "nonzero");
    }
    c.detail += "; H0 dims " + dims_text(rep.eigen_dims) + ", Sym^2 dims " + dims_text(rep.sym2_dims) +
                ", Sym^2(H0^-) dims " + dims_text(rep.sym2_minus_dims);
    rep.checks.push_back(c);
  }

  const bool have_q = res.quadrics.dimension() == 1;
  const SymSquareElement G = have_q ? res.quadrics.basis[0] : SymSquareElement(g);

  // (2) q^- lies on the quadric.
  {
    const Scalar v = evaluate_at_qminus(res.frame, G);
    rep.checks.push_back({"qminus_on_quadric", have_q && v.is_zero(), "G(q^-) = " + v.to_string()});
  }

  // (3) Cone of rank 3 whose vertex is none of the known curve points.
  {
    BatteryCheck c{"cone_vertex_off_curve", false, ""};
    const std::size_t r = rank(G.matrix());
    const auto ker = kernel_basis(G.matrix());
    bool off = ker.size() == 1;
    if (off) {
      for (const auto& row : d.fiber.ratios)
        if (proportional(ker[0], row)) off = false;
      for (const auto& ch : d.charts)
        if (proportional(ker[0], chart_point(ch))) off = false;
    }
    c.pass = have_q && r == 3 && off;
    c.detail = "Gram rank " + std::to_string(r) +
               (ker.size() == 1 ? "; vertex " + format_vector(ker[0]) : std::string()) +
               (off ? "; vertex differs from every fiber and ramification point" : "");
    rep.checks.push_back(c);
  }

  // (4) H^- = {u_0 = 0} cuts the cone in a double line through the collinear
  // ramification points.
  {
    BatteryCheck c{"hminus_tangent", false, ""};
    const Matrix ag = adapted_gram(res.frame, G);
    Matrix block(g - 1, g - 1);
    for (std::size_t i = 1; i < g; ++i)
      for (std::size_t j = 1; j < g; ++j) block(i - 1, j - 1) = ag(i, j);
    const std::size_t rb = rank(block);
    std::vector<Vector> pts;
    bool in_h = true;
    for (const auto& ch : d.charts) {
      pts.push_back(chart_point(ch));
      if (!dot(pts.back(), res.split.alpha_coords).is_zero()) in_h = false;
    }
    const std::size_t rp = span_rank(pts, g);
    c.pass = have_q && rb == 1 && in_h && rp == 2;
    c.detail = "rank of G on H^- = " + std::to_string(rb) + "; ramification points " +
               (in_h ? "in H^-" : "not in H^-") + ", span rank " + std::to_string(rp);
    rep.checks.push_back(c);
  }

  // (5) Ker dP_E^dual = Sym^2(H0^-)_rho + Sym^2(H0^-)_rho^2.
  {
    std::vector<Vector> kvecs, nontriv;
    for (const auto& b : res.kernel.basis) kvecs.push_back(b.lex());
    for (int e = 1; e < 3; ++e) nontriv.insert(nontriv.end(), s2.minus[e].begin(), s2.minus[e].end());
    const bool same = same_span(kvecs, nontriv, s);
    rep.checks.push_back({"kernel_is_nontrivial_isotypic", same && kvecs.size() == 4,
                          "dim Ker dP_E^dual = " + std::to_string(kvecs.size()) + "; nontrivial part of Sym^2(H0^-) " +
                              "has dim " + std::to_string(nontriv.size()) + (same ? "; spans agree" : "; spans differ")});
  }

  // (6) nu vanishes on the kernel: basis and all pairwise sums.
  {
    bool zero = true;
    std::size_t evaluated = 0;
    const auto& kb = res.kernel.basis;
    for (std::size_t i = 0; i < kb.size(); ++i) {
      for (std::size_t j = i; j < kb.size(); ++j) {
        const SymSquareElement b = i == j ? kb[i] : kb[i] + kb[j];
        if (!nu(res.table, b).is_zero()) zero = false;
        ++evaluated;
      }
    }
    rep.checks.push_back({"nu_vanishes_on_kernel", zero && res.criterion.nu_vanishes,
                          std::to_string(evaluated) + " polarization evaluations, all " + (zero ? "zero" : "not zero")});
  }

  // (7) Verdict.
  rep.checks.push_back({"criterion_verdict", !res.criterion.dim_one && res.criterion.dim_ker_dP >= 2,
                        "dim Ker dP = " + std::to_string(res.criterion.dim_ker_dP) +
                            (res.criterion.dim_one ? " (= 1)" : " (>= 2)")});
  return rep;
}

}  // namespace prymker
