#include "prymker/diffalg.hpp"

#include <algorithm>

namespace prymker {

TraceSplit trace_split(const CoveringDatum& d) {
  const std::size_t g = static_cast<std::size_t>(d.genus);
  TraceSplit s;
  s.degree = d.degree;
  s.tau = zero_vector(g);
  for (const auto& row : d.fiber.ratios)
    for (std::size_t i = 0; i < g; ++i) s.tau[i] += row[i];
  if (is_zero(s.tau)) throw Error(ErrorCode::PreconditionFailed, "trace vector is zero; fiber data is corrupt");

  // pi^* alpha in the eta basis: match every certified chart coefficient and
  // take ratio 1 at each fiber point.
  std::vector<Vector> rows;
  Vector rhs;
  for (const auto& c : d.charts) {
    const int t = std::min(chart_terms(c), c.alpha_pullback.precision());
    for (int e = 0; e < t; ++e) {
      Vector r(g);
      for (std::size_t i = 0; i < g; ++i) r[i] = c.forms[i].coeff(e);
      rows.push_back(std::move(r));
      rhs.push_back(c.alpha_pullback.coeff(e));
    }
  }
  for (const auto& row : d.fiber.ratios) {
    rows.push_back(row);
    rhs.push_back(Scalar(1));
  }
  const Matrix sys = Matrix::from_rows(rows, g);
  if (rank(sys) != g)
    throw Error(ErrorCode::DimensionMismatch, "basis is not independent on the certified coefficients");
  if (!solve_any(sys, rhs, s.alpha_coords))
    throw Error(ErrorCode::PreconditionFailed, "pullback of alpha is not in the span of the basis");
  if (d.alpha_index_hint && s.alpha_coords != unit_vector(g, *d.alpha_index_hint))
    throw Error(ErrorCode::ConsistencyViolated, "alpha_index_hint disagrees with the chart and fiber data");

  const Scalar deg(static_cast<long>(d.degree));
  if (dot(s.tau, s.alpha_coords) != deg)
    throw Error(ErrorCode::ConsistencyViolated, "trace of pi^* alpha differs from the degree");
  s.minus_basis = kernel_basis(Matrix::from_rows({s.tau}, g));
  s.qminus = scaled(s.tau, deg.inverse());
  return s;
}

std::size_t sym2_dimension(std::size_t g) { return g * (g + 1) / 2; }

std::size_t lex_index(std::size_t i, std::size_t j, std::size_t g) {
  if (i > j) std::swap(i, j);
  // Rows 0..i-1 contribute g, g-1, ..., g-i+1 entries.
  return i * g - i * (i - 1) / 2 + (j - i);
}

std::pair<std::size_t, std::size_t> lex_pair(std::size_t index, std::size_t g) {
  std::size_t i = 0;
  while (index >= g - i) {
    index -= g - i;
    ++i;
  }
  return {i, i + index};
}

SymSquareElement SymSquareElement::from_matrix(const Matrix& phi) {
  if (phi.rows() != phi.cols()) throw Error(ErrorCode::DimensionMismatch, "symmetric tensor must be square");
  if (phi != phi.transpose()) throw Error(ErrorCode::DimensionMismatch, "tensor is not symmetric");
  SymSquareElement e;
  e.phi_ = phi;
  return e;
}

SymSquareElement SymSquareElement::from_lex(const Vector& coords, std::size_t g) {
  if (coords.size() != sym2_dimension(g)) throw Error(ErrorCode::DimensionMismatch, "wrong Sym^2 coordinate count");
  SymSquareElement e(g);
  const Scalar half = Scalar(mpq_class(1, 2));
  for (std::size_t k = 0; k < coords.size(); ++k) {
    const auto [i, j] = lex_pair(k, g);
    if (i == j) {
      e.phi_(i, i) = coords[k];
    } else {
      e.phi_(i, j) = coords[k] * half;
      e.phi_(j, i) = e.phi_(i, j);
    }
  }
  return e;
}

SymSquareElement SymSquareElement::product(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "factor lengths differ");
  const std::size_t g = a.size();
  SymSquareElement e(g);
  const Scalar half = Scalar(mpq_class(1, 2));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      const Scalar v = a[i] * b[j] + a[j] * b[i];
      if (!v.is_zero()) e.phi_(i, j) = v * half;
    }
  return e;
}

Vector SymSquareElement::lex() const {
  const std::size_t g = genus();
  Vector out(sym2_dimension(g));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j)
      out[lex_index(i, j, g)] = i == j ? phi_(i, i) : phi_(i, j) * Scalar(2);
  return out;
}

bool SymSquareElement::is_zero() const {
  for (std::size_t i = 0; i < genus(); ++i)
    if (!prymker::is_zero(phi_.row(i))) return false;
  return true;
}

Scalar SymSquareElement::evaluate(const Vector& q) const { return dot(q, phi_ * q); }

SymSquareElement SymSquareElement::transformed(const Matrix& action) const {
  SymSquareElement e;
  e.phi_ = action.transpose() * phi_ * action;
  return e;
}

SymSquareElement operator+(const SymSquareElement& a, const SymSquareElement& b) {
  const std::size_t g = a.genus();
  if (b.genus() != g) throw Error(ErrorCode::DimensionMismatch, "Sym^2 elements over different bases");
  SymSquareElement e(g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) e.phi_(i, j) = a.phi_(i, j) + b.phi_(i, j);
  return e;
}

SymSquareElement operator*(const Scalar& s, const SymSquareElement& a) {
  SymSquareElement e = a;
  for (std::size_t i = 0; i < a.genus(); ++i)
    for (std::size_t j = 0; j < a.genus(); ++j) e.phi_(i, j) *= s;
  return e;
}

SymSquareElement operator-(const SymSquareElement& a, const SymSquareElement& b) { return a + Scalar(-1) * b; }

ProductTable product_table(const CoveringDatum& d) {
  ProductTable t;
  const std::size_t g = static_cast<std::size_t>(d.genus);
  t.genus = g;
  const std::size_t s = sym2_dimension(g);
  for (const auto& c : d.charts) {
    const int terms = chart_terms(c);
    t.terms.push_back(terms);
    std::vector<TruncatedSeries> prods(s);
    Vector res(s);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i; j < g; ++j) {
        const std::size_t k = lex_index(i, j, g);
        prods[k] = (c.forms[i] * c.forms[j]).truncated(terms);
        res[k] = residue(prods[k] / c.alpha_pullback);
      }
    t.chart.push_back(std::move(prods));
    t.residues.push_back(std::move(res));
  }
  for (const auto& row : d.fiber.ratios) {
    Vector v(s);
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i; j < g; ++j) v[lex_index(i, j, g)] = row[i] * row[j];
    t.fiber.push_back(std::move(v));
  }
  return t;
}

bool QuadDifferentialData::vanishes(const std::vector<int>& terms) const {
  for (std::size_t j = 0; j < charts.size(); ++j) {
    const int t = std::min(terms[j], charts[j].precision());
    for (int e = 0; e < t; ++e)
      if (!charts[j].coeff(e).is_zero()) return false;
  }
  return is_zero(fiber);
}

QuadDifferentialData multiply(const ProductTable& t, const SymSquareElement& phi) {
  if (phi.genus() != t.genus) throw Error(ErrorCode::DimensionMismatch, "Sym^2 element has the wrong genus");
  const Vector c = phi.lex();
  QuadDifferentialData out;
  for (std::size_t j = 0; j < t.chart.size(); ++j) {
    TruncatedSeries acc = TruncatedSeries::zero(t.terms[j]);
    for (std::size_t k = 0; k < c.size(); ++k)
      if (!c[k].is_zero()) acc = acc + t.chart[j][k] * c[k];
    out.charts.push_back(acc.truncated(t.terms[j]));
  }
  out.fiber = zero_vector(t.fiber.size());
  for (std::size_t p = 0; p < t.fiber.size(); ++p) out.fiber[p] = dot(c, t.fiber[p]);
  return out;
}

Matrix multiplication_matrix(const ProductTable& t) {
  const std::size_t s = sym2_dimension(t.genus);
  std::size_t rows = t.fiber.size();
  for (int terms : t.terms) rows += static_cast<std::size_t>(terms);
  Matrix m(rows, s);
  std::size_t r = 0;
  for (std::size_t j = 0; j < t.chart.size(); ++j)
    for (int e = 0; e < t.terms[j]; ++e, ++r)
      for (std::size_t k = 0; k < s; ++k) m(r, k) = t.chart[j][k].coeff(e);
  for (const auto& f : t.fiber) {
    for (std::size_t k = 0; k < s; ++k) m(r, k) = f[k];
    ++r;
  }
  return m;
}

QuadricSpace quadric_kernel(const CoveringDatum& d, const ProductTable& t) {
  const long g = d.genus;
  long count = static_cast<long>(t.fiber.size());
  for (int terms : t.terms) count += terms;
  if (count < 4 * g - 3)
    throw Error(ErrorCode::InsufficientPrecision, std::to_string(count) +
                                                      " certified coefficients cannot certify quadrics (need " +
                                                      std::to_string(4 * g - 3) + ")");
  QuadricSpace q;
  for (const auto& v : kernel_basis(multiplication_matrix(t)))
    q.basis.push_back(SymSquareElement::from_lex(v, t.genus));
  const long expected = (g - 2) * (g - 3) / 2;
  if (static_cast<long>(q.dimension()) != expected)
    throw Error(ErrorCode::DimensionMismatch,
                "space of quadrics has dimension " + std::to_string(q.dimension()) + ", a non-hyperelliptic curve " +
                    "of genus " + std::to_string(g) + " needs " + std::to_string(expected));
  return q;
}

std::vector<SymSquareElement> minus_sym2_basis(const TraceSplit& split) {
  std::vector<SymSquareElement> out;
  const auto& b = split.minus_basis;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j) out.push_back(SymSquareElement::product(b[i], b[j]));
  return out;
}

bool in_minus_sym2(const TraceSplit& split, const SymSquareElement& phi) {
  return is_zero(phi.matrix() * split.qminus);
}

}  // namespace prymker
