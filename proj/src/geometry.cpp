#include "prymker/geometry.hpp"

#include <algorithm>

namespace prymker {

CanonicalFrame canonical_frame(const TraceSplit& split) {
  const std::size_t g = split.tau.size();
  CanonicalFrame f;
  std::vector<Vector> rows{split.alpha_coords};
  rows.insert(rows.end(), split.minus_basis.begin(), split.minus_basis.end());
  f.adapted = Matrix::from_rows(rows, g);
  f.adapted_inverse = inverse(f.adapted);
  f.qminus = split.qminus;
  f.hminus = split.alpha_coords;
  // q^- in adapted coordinates must be (1, 0, ..., 0).
  if (f.adapted * f.qminus != unit_vector(g, 0))
    throw Error(ErrorCode::ConsistencyViolated, "q^- is not dual to the adapted basis");
  return f;
}

Matrix adapted_gram(const CanonicalFrame& frame, const SymSquareElement& G) {
  return frame.adapted_inverse.transpose() * G.matrix() * frame.adapted_inverse;
}

QuadricDecomposition decompose_quadric(const TraceSplit& split, const CanonicalFrame& frame,
                                       const SymSquareElement& G) {
  const std::size_t g = G.genus();
  const Matrix a = adapted_gram(frame, G);
  // omega_Q in adapted coordinates: c_0 = a_00, c_b = 2 a_0b.
  Vector c(g);
  c[0] = a(0, 0);
  for (std::size_t b = 1; b < g; ++b) c[b] = a(0, b) * Scalar(2);
  Matrix minus = a;
  for (std::size_t b = 0; b < g; ++b) {
    minus(0, b) = Scalar();
    minus(b, 0) = Scalar();
  }
  QuadricDecomposition dq;
  dq.G = G;
  dq.G_minus = SymSquareElement::from_matrix(frame.adapted.transpose() * minus * frame.adapted);
  dq.omega_Q = frame.adapted.transpose() * c;
  if (dq.G_minus + SymSquareElement::product(split.alpha_coords, dq.omega_Q) != G)
    throw Error(ErrorCode::ConsistencyViolated, "quadric decomposition does not reconstruct G");
  if (!in_minus_sym2(split, dq.G_minus))
    throw Error(ErrorCode::ConsistencyViolated, "minus part of the quadric leaves Sym^2(H0^-)");
  return dq;
}

Scalar evaluate_at_qminus(const CanonicalFrame& frame, const SymSquareElement& G) {
  const Scalar direct = G.evaluate(frame.qminus);
  if (direct != adapted_gram(frame, G)(0, 0))
    throw Error(ErrorCode::ConsistencyViolated, "G(q^-) differs between coordinate systems");
  return direct;
}

std::vector<FunctPointEntry> functpoint_check(const ProductTable& t, const TraceSplit& split,
                                              const CanonicalFrame& frame, const QuadricSpace& quadrics) {
  std::vector<FunctPointEntry> out;
  for (std::size_t q = 0; q < quadrics.basis.size(); ++q) {
    const SymSquareElement& G = quadrics.basis[q];
    if (!multiply(t, G).vanishes(t.terms))
      throw Error(ErrorCode::PreconditionFailed, "element " + std::to_string(q) + " is not a quadric through the curve");
    const QuadricDecomposition dq = decompose_quadric(split, frame, G);
    FunctPointEntry e;
    e.quadric = q;
    e.lhs = nu(t, dq.G_minus);
    e.rhs = evaluate_at_qminus(frame, G);
    e.trace_omega = dot(split.tau, dq.omega_Q);
    e.agree = (e.lhs.is_zero() == e.rhs.is_zero()) && e.lhs == -e.trace_omega;
    if (!e.agree)
      throw Error(ErrorCode::EquivalenceViolated,
                  "quadric " + std::to_string(q) + ": fiber sum " + e.lhs.to_string() + ", G(q^-) = " +
                      e.rhs.to_string() + ", -tau(omega_Q) = " + (-e.trace_omega).to_string());
    out.push_back(std::move(e));
  }
  return out;
}

HalfGeoReport halfgeo_criterion(const CanonicalFrame& frame, const QuadricSpace& quadrics,
                                const CriterionReport& criterion) {
  HalfGeoReport r;
  for (const auto& G : quadrics.basis)
    if (!evaluate_at_qminus(frame, G).is_zero()) r.qminus_in_all = false;
  r.implies_dim1 = !r.qminus_in_all;
  if (r.implies_dim1 && !criterion.dim_one)
    throw Error(ErrorCode::ConsistencyViolated,
                "q^- lies outside a quadric through the curve, yet the fiber-sum criterion gives dim Ker dP >= 2");
  return r;
}

bool LedgerReport::all_hold() const {
  return std::all_of(identities.begin(), identities.end(), [](const LedgerIdentity& i) { return i.holds; });
}

LedgerReport dimension_ledger(const CoveringDatum& d, const ProductTable& t, const TraceSplit& split,
                              const CanonicalFrame& frame, const QuadricSpace& quadrics, const KernelE& ke) {
  const long g = d.genus;
  const long n = static_cast<long>(d.charts.size());
  LedgerReport r;
  r.h0_quadrics = static_cast<long>(quadrics.dimension());
  r.dim_ker_E = static_cast<long>(ke.dimension());
  r.deg_rbar = d.reduced_ramification_degree();

  auto add = [&](std::string name, std::string statement, long lhs, long rhs) {
    r.identities.push_back({std::move(name), std::move(statement), lhs, rhs, lhs == rhs});
  };

  add("ramification_excess", "dim Ker dP_E^dual - h0(I_F(2)) = deg Rbar = 2g - 2 - n", r.dim_ker_E - r.h0_quadrics,
      r.deg_rbar);
  add("ramification_degree", "deg Rbar = 2g - 2 - n", r.deg_rbar, 2 * g - 2 - n);

  // Quadrics projected to Sym^2(H0^-) land in Ker dP_E^dual and stay independent.
  std::vector<Vector> projections;
  r.projections_in_kernel = true;
  for (const auto& G : quadrics.basis) {
    const QuadricDecomposition dq = decompose_quadric(split, frame, G);
    const Covector cv = codifferential(t, split, dq.G_minus);
    if (!is_zero(cv.gamma)) r.projections_in_kernel = false;
    projections.push_back(dq.G_minus.lex());
  }
  r.projected_rank = static_cast<long>(span_rank(projections, sym2_dimension(t.genus)));
  add("quadric_projection_rank", "rank of quadrics projected to Sym^2(H0^-) = h0(I_F(2))", r.projected_rank,
      r.h0_quadrics);
  add("quadric_projection_in_kernel", "projected quadrics lie in Ker dP_E^dual (1 = yes)",
      r.projections_in_kernel ? 1 : 0, 1);

  // H0(omega^2) realized as the image of m in the certified coefficient space.
  const Matrix mm = multiplication_matrix(t);
  const Echelon ech = row_echelon(mm);
  r.multiplication_rank = static_cast<long>(ech.rank());
  add("multiplication_surjective", "rank of m = 3g - 3", r.multiplication_rank, 3 * g - 3);

  // dh_E^dual: residues of Q / pi^* alpha on a basis of the image.
  std::vector<Vector> residue_rows;
  for (std::size_t p : ech.pivots) {
    Vector row(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = t.residues[static_cast<std::size_t>(j)][p];
    residue_rows.push_back(std::move(row));
  }
  r.residue_rank = static_cast<long>(span_rank(residue_rows, static_cast<std::size_t>(n)));
  r.dim_ker_dh = r.multiplication_rank - r.residue_rank;
  add("exact_sequence", "dim Ker dP_E^dual = h0(I_F(2)) + dim Ker dh_E^dual - g (E-fixed residue map)", r.dim_ker_E,
      r.h0_quadrics + r.dim_ker_dh - g);

  // pi^* alpha * H0(omega_F) sits inside Ker dh_E^dual with dimension g.
  std::vector<Vector> images;
  bool residue_free = true;
  for (std::size_t i = 0; i < t.genus; ++i) {
    const SymSquareElement e = SymSquareElement::product(split.alpha_coords, unit_vector(t.genus, i));
    images.push_back(mm * e.lex());
    for (const auto& res : t.residues)
      if (!dot(e.lex(), res).is_zero()) residue_free = false;
  }
  r.alpha_multiples_rank = static_cast<long>(span_rank(images, mm.rows()));
  add("pullback_multiples", "m(pi^* alpha (.) H0(omega_F)) has rank g inside Ker dh_E^dual",
      residue_free ? r.alpha_multiples_rank : -1, g);
  return r;
}

}  // namespace prymker
