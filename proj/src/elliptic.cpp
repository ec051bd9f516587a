#include "prymker/elliptic.hpp"

#include <algorithm>
#include <map>

#include "prymker/matrix.hpp"

namespace prymker {

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  return p;
}

int poly_degree(const Poly& p) { return static_cast<int>(poly_trim(p).size()) - 1; }

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return poly_trim(std::move(r));
}

Poly poly_sub(const Poly& a, const Poly& b) { return poly_add(a, poly_scale(b, Scalar(-1))); }

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return poly_trim(std::move(r));
}

Poly poly_scale(const Poly& a, const Scalar& s) {
  Poly r = a;
  for (auto& c : r) c *= s;
  return poly_trim(std::move(r));
}

Scalar poly_eval(const Poly& p, const Scalar& x) {
  Scalar acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

TruncatedSeries poly_eval(const Poly& p, const TruncatedSeries& x) {
  TruncatedSeries acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + TruncatedSeries::constant(p[i]);
  return acc;
}

Poly poly_divide_root(const Poly& p, const Scalar& r) {
  const Poly t = poly_trim(p);
  if (t.empty()) return {};
  Poly q(t.size() - 1);
  Scalar carry;
  for (std::size_t i = t.size(); i-- > 1;) {
    carry = t[i] + carry * r;
    q[i - 1] = carry;
  }
  if (t[0] + carry * r != Scalar(0))
    throw Error(ErrorCode::ConsistencyViolated, r.to_string() + " is not a root of " + poly_to_string(t, "x"));
  return poly_trim(std::move(q));
}

std::string poly_to_string(const Poly& p, const std::string& var) {
  const Poly t = poly_trim(p);
  if (t.empty()) return "0";
  std::string s;
  for (std::size_t i = t.size(); i-- > 0;) {
    const Scalar& c = t[i];
    if (c.is_zero()) continue;
    std::string coef;
    bool negative = false;
    if (c.is_rational()) {
      mpq_class q = c.rational();
      negative = sgn(q) < 0;
      q = abs(q);
      if (q != 1 || i == 0) coef = q.get_str();
    } else {
      coef = "(" + c.to_string() + ")";
    }
    if (s.empty())
      s += negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    std::string mono;
    if (i >= 1) mono = var + (i >= 2 ? "^" + std::to_string(i) : "");
    if (!coef.empty() && !mono.empty())
      s += coef + "*" + mono;
    else
      s += coef + mono;
  }
  return s;
}

namespace {

std::vector<mpz_class> positive_divisors(mpz_class n) {
  n = abs(n);
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::vector<std::pair<mpq_class, int>> rational_roots(const Poly& p) {
  Poly t = poly_trim(p);
  if (t.empty()) throw Error(ErrorCode::PreconditionFailed, "the zero polynomial has every number as a root");
  std::map<mpq_class, int> roots;
  // Zero roots first.
  int zeros = 0;
  while (t.size() > 1 && t[0].is_zero()) {
    t.erase(t.begin());
    ++zeros;
  }
  if (zeros > 0) roots[mpq_class(0)] = zeros;
  if (t.size() > 1) {
    mpz_class lcm = 1;
    for (const auto& c : t) {
      const mpq_class& q = c.rational();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    }
    const mpz_class a0 = mpq_class(t.front().rational() * lcm).get_num();
    const mpz_class an = mpq_class(t.back().rational() * lcm).get_num();
    const auto num = positive_divisors(a0);
    const auto den = positive_divisors(an);
    std::vector<mpq_class> candidates;
    for (const auto& a : num)
      for (const auto& b : den) {
        mpq_class r(a, b);
        r.canonicalize();
        candidates.push_back(r);
        candidates.push_back(-r);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& r : candidates) {
      int m = 0;
      while (t.size() > 1 && poly_eval(t, Scalar(r)).is_zero()) {
        t = poly_divide_root(t, Scalar(r));
        ++m;
      }
      if (m > 0) roots[r] += m;
    }
  }
  return {roots.begin(), roots.end()};
}

std::string CurvePoint::to_string() const {
  if (at_infinity) return "O";
  return "(" + x.to_string() + ", " + y.to_string() + ")";
}

EllipticCurve::EllipticCurve(const Scalar& A, const Scalar& B) : a_(A), b_(B) {
  if ((Scalar(4) * A * A * A + Scalar(27) * B * B).is_zero())
    throw Error(ErrorCode::InvalidCurve, "y^2 = x^3 + (" + A.to_string() + ")x + (" + B.to_string() +
                                             ") is singular (4A^3 + 27B^2 = 0)");
}

Poly EllipticCurve::cubic() const { return poly_trim({b_, a_, Scalar(0), Scalar(1)}); }

bool EllipticCurve::contains(const CurvePoint& p) const {
  if (p.at_infinity) return true;
  return p.y * p.y == poly_eval(cubic(), p.x);
}

CurvePoint EllipticCurve::negate(const CurvePoint& p) const {
  if (p.at_infinity) return p;
  return CurvePoint::affine(p.x, -p.y);
}

CurvePoint EllipticCurve::add(const CurvePoint& p, const CurvePoint& q) const {
  if (p.at_infinity) return q;
  if (q.at_infinity) return p;
  Scalar lambda;
  if (p.x == q.x) {
    if ((p.y + q.y).is_zero()) return CurvePoint::infinity();
    lambda = (Scalar(3) * p.x * p.x + a_) / (Scalar(2) * p.y);
  } else {
    lambda = (q.y - p.y) / (q.x - p.x);
  }
  const Scalar x3 = lambda * lambda - p.x - q.x;
  return CurvePoint::affine(x3, lambda * (p.x - x3) - p.y);
}

int CurveFunction::pole_order() const {
  int o = 0;
  if (!P.empty()) o = std::max(o, 2 * poly_degree(P));
  if (!Q.empty()) o = std::max(o, 2 * poly_degree(Q) + 3);
  return o;
}

Scalar CurveFunction::evaluate(const CurvePoint& p) const {
  if (p.at_infinity) throw Error(ErrorCode::PreconditionFailed, "cannot evaluate a curve function at O");
  return poly_eval(P, p.x) + p.y * poly_eval(Q, p.x);
}

TruncatedSeries CurveFunction::expand(const TruncatedSeries& x, const TruncatedSeries& y) const {
  TruncatedSeries r = poly_eval(P, x);
  if (!Q.empty()) r = r + y * poly_eval(Q, x);
  return r;
}

CurveFunction CurveFunction::scaled(const Scalar& s) const { return {poly_scale(P, s), poly_scale(Q, s)}; }

std::string CurveFunction::to_string() const {
  if (Q.empty()) return poly_to_string(P, "x");
  const std::string q = poly_degree(Q) == 0 && Q[0].is_one() ? "y" : "y*(" + poly_to_string(Q, "x") + ")";
  if (P.empty()) return q;
  return poly_to_string(P, "x") + " + " + q;
}

CurveFunction multiply(const EllipticCurve& E, const CurveFunction& f, const CurveFunction& g) {
  CurveFunction r;
  r.P = poly_add(poly_mul(f.P, g.P), poly_mul(E.cubic(), poly_mul(f.Q, g.Q)));
  r.Q = poly_add(poly_mul(f.P, g.Q), poly_mul(f.Q, g.P));
  return r;
}

LocalExpansion local_expansion(const EllipticCurve& E, const CurvePoint& p, int prec) {
  if (!E.contains(p)) throw Error(ErrorCode::PreconditionFailed, p.to_string() + " is not on the curve");
  if (prec < 1) throw Error(ErrorCode::InsufficientPrecision, "local expansion needs a positive precision");
  LocalExpansion le;
  le.point = p;
  const TruncatedSeries t = TruncatedSeries::monomial(Scalar(1), 1);
  if (p.at_infinity) {
    // t = x/y, x = xi t^-2, y = xi t^-3 with xi^3 - xi^2 + A t^4 xi + B t^6 = 0.
    le.kind = LocalExpansion::Kind::Infinity;
    BivariatePolynomial F;
    F.add_term(0, 3, Scalar(1));
    F.add_term(0, 2, Scalar(-1));
    F.add_term(4, 1, E.A());
    F.add_term(6, 0, E.B());
    const TruncatedSeries xi = newton_solve(F, TruncatedSeries::constant(Scalar(1), 1), prec + 3);
    le.x = xi.shifted(-2);
    le.y = xi.shifted(-3);
    le.alpha = le.x.derivative() / le.y;
    return le;
  }
  const Poly f = E.cubic();
  if (p.y.is_zero()) {
    // t = y; x = x0 + s(t) with f(x0 + s) = t^2.
    le.kind = LocalExpansion::Kind::TwoTorsion;
    const Scalar x0 = p.x;
    BivariatePolynomial F;
    F.add_term(0, 1, Scalar(3) * x0 * x0 + E.A());
    F.add_term(0, 2, Scalar(3) * x0);
    F.add_term(0, 3, Scalar(1));
    F.add_term(2, 0, Scalar(-1));
    const TruncatedSeries s = newton_solve(F, TruncatedSeries::zero(2), prec + 2);
    le.x = s + TruncatedSeries::constant(x0);
    le.y = t;
    le.alpha = (s.derivative() / t).truncated(prec);
    return le;
  }
  le.kind = LocalExpansion::Kind::Generic;
  le.x = TruncatedSeries::polynomial({p.x, Scalar(1)});
  const TruncatedSeries rhs = poly_eval(f, le.x);
  BivariatePolynomial F;
  F.add_term(0, 2, Scalar(1));
  for (std::size_t i = 0; i < rhs.stored().size(); ++i)
    F.add_term(rhs.valuation() + static_cast<int>(i), 0, -rhs.stored()[i]);
  le.y = newton_solve(F, TruncatedSeries::constant(p.y, 1), prec);
  le.alpha = le.y.inverse();
  return le;
}

int valuation_at(const EllipticCurve& E, const CurveFunction& f, const CurvePoint& p) {
  if (f.is_zero()) throw Error(ErrorCode::PreconditionFailed, "the zero function has no valuation");
  const int bound = f.pole_order();
  const LocalExpansion le = local_expansion(E, p, 2 * bound + 8);
  const TruncatedSeries s = f.expand(le.x, le.y);
  if (s.is_zero())
    throw Error(ErrorCode::ConsistencyViolated, "local series of " + f.to_string() + " at " + p.to_string() +
                                                    " vanishes beyond the degree bound");
  return s.valuation();
}

int divisor_degree(const Divisor& d) {
  int s = 0;
  for (const auto& e : d) s += e.multiplicity;
  return s;
}

Divisor divisor_of(const EllipticCurve& E, const CurveFunction& h) {
  if (h.is_zero()) throw Error(ErrorCode::PreconditionFailed, "the zero function has no divisor");
  if (h.is_constant()) return {};
  const Poly f = E.cubic();
  const Poly norm = poly_sub(poly_mul(h.P, h.P), poly_mul(f, poly_mul(h.Q, h.Q)));
  for (const auto& c : norm)
    if (!c.is_rational())
      throw Error(ErrorCode::PointsOutsideField, "zeros of " + h.to_string() + " need the norm " +
                                                     poly_to_string(norm, "x") + " to have rational coefficients");
  const int pole = h.pole_order();
  Divisor div;
  int found = 0;
  Poly residual = norm;
  for (const auto& [root, mult] : rational_roots(norm)) {
    const Scalar x0(root);
    for (int i = 0; i < mult; ++i) residual = poly_divide_root(residual, x0);
    const Scalar fx = poly_eval(f, x0);
    std::vector<CurvePoint> candidates;
    if (fx.is_zero()) {
      candidates.push_back(CurvePoint::affine(x0, Scalar()));
    } else if (!poly_eval(h.Q, x0).is_zero()) {
      candidates.push_back(CurvePoint::affine(x0, -poly_eval(h.P, x0) / poly_eval(h.Q, x0)));
    } else {
      mpq_class r;
      if (!fx.is_rational() || !rational_sqrt(fx.rational(), r))
        throw Error(ErrorCode::PointsOutsideField, "zeros of " + h.to_string() + " over x = " + x0.to_string() +
                                                       " need y^2 = " + fx.to_string() + "; extend the field");
      candidates.push_back(CurvePoint::affine(x0, Scalar(r)));
      candidates.push_back(CurvePoint::affine(x0, Scalar(mpq_class(-r))));
    }
    for (const auto& pt : candidates) {
      const int v = valuation_at(E, h, pt);
      if (v > 0) {
        div.push_back({pt, v});
        found += v;
      }
    }
  }
  if (found != pole)
    throw Error(ErrorCode::PointsOutsideField,
                "zeros of " + h.to_string() + " account for degree " + std::to_string(found) + " of " +
                    std::to_string(pole) + "; remaining zeros have x-coordinates among the roots of " +
                    poly_to_string(residual, "x"));
  const int v_inf = valuation_at(E, h, CurvePoint::infinity());
  if (v_inf != -pole)
    throw Error(ErrorCode::ConsistencyViolated, "pole order at O from series (" + std::to_string(-v_inf) +
                                                    ") disagrees with the degree count (" + std::to_string(pole) + ")");
  div.push_back({CurvePoint::infinity(), -pole});
  return div;
}

std::vector<CurveFunction> riemann_roch_basis(const EllipticCurve& E, const Divisor& D) {
  int at_infinity = 0;
  std::vector<std::pair<CurvePoint, int>> conditions;  // vanishing orders at finite points
  for (const auto& e : D) {
    if (!E.contains(e.point)) throw Error(ErrorCode::PreconditionFailed, e.point.to_string() + " is not on the curve");
    if (e.point.at_infinity) {
      at_infinity += e.multiplicity;
      continue;
    }
    auto it = std::find_if(conditions.begin(), conditions.end(), [&](const auto& c) { return c.first == e.point; });
    if (it == conditions.end())
      conditions.push_back({e.point, -e.multiplicity});
    else
      it->second -= e.multiplicity;
  }
  const int deg = divisor_degree(D);
  if (deg < 0) throw Error(ErrorCode::PreconditionFailed, "L(D) needs deg D >= 0");
  for (const auto& c : conditions)
    if (c.second < 0)
      throw Error(ErrorCode::PreconditionFailed, "positive coefficient at the finite point " + c.first.to_string() +
                                                     " is not supported");

  // Ansatz L(M O): 1, x, y, x^2, x y, ... with pole orders 0, 2, 3, 4, 5, ...
  std::vector<CurveFunction> monomials;
  for (int o = 0; o <= at_infinity; ++o) {
    if (o == 1) continue;
    CurveFunction m;
    Poly power(static_cast<std::size_t>((o % 2 == 0 ? o : o - 3) / 2) + 1);
    power.back() = Scalar(1);
    if (o % 2 == 0)
      m.P = power;
    else
      m.Q = power;
    monomials.push_back(m);
  }
  std::vector<Vector> rows;
  for (const auto& [pt, order] : conditions) {
    if (order == 0) continue;
    const LocalExpansion le = local_expansion(E, pt, order + 1);
    std::vector<TruncatedSeries> ser;
    for (const auto& m : monomials) ser.push_back(m.expand(le.x, le.y));
    for (int e = 0; e < order; ++e) {
      Vector r;
      for (const auto& s : ser) r.push_back(s.coeff(e));
      rows.push_back(std::move(r));
    }
  }
  std::vector<Vector> kernel;
  if (rows.empty()) {
    for (std::size_t i = 0; i < monomials.size(); ++i) kernel.push_back(unit_vector(monomials.size(), i));
  } else {
    kernel = kernel_basis(Matrix::from_rows(rows, monomials.size()));
  }
  std::vector<CurveFunction> basis;
  for (const auto& v : kernel) {
    CurveFunction f;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) {
        f.P = poly_add(f.P, poly_scale(monomials[i].P, v[i]));
        f.Q = poly_add(f.Q, poly_scale(monomials[i].Q, v[i]));
      }
    basis.push_back(std::move(f));
  }
  const bool trivial = at_infinity == 0 && std::all_of(conditions.begin(), conditions.end(),
                                                       [](const auto& c) { return c.second == 0; });
  const std::size_t expected = static_cast<std::size_t>(deg >= 1 ? deg : (trivial ? 1 : 0));
  if (basis.size() != expected && !(deg == 0 && !trivial && basis.size() <= 1))
    throw Error(ErrorCode::DimensionMismatch, "l(D) = " + std::to_string(basis.size()) + " but Riemann-Roch gives " +
                                                  std::to_string(expected));
  return basis;
}

}  // namespace prymker
