#include "prymker/prym.hpp"

namespace prymker {

Covector codifferential(const ProductTable& t, const TraceSplit& split, const SymSquareElement& phi,
                        bool check_minus) {
  if (check_minus && !in_minus_sym2(split, phi))
    throw Error(ErrorCode::NotInMinusSpace, "element does not lie in Sym^2 of the minus space");
  if (phi.genus() != t.genus) throw Error(ErrorCode::DimensionMismatch, "Sym^2 element has the wrong genus");
  const Vector c = phi.lex();
  Covector cv;
  for (const auto& res : t.residues) cv.gamma.push_back(dot(c, res));
  cv.gamma_s = nu(t, phi);
  return cv;
}

Scalar nu(const ProductTable& t, const SymSquareElement& beta) {
  if (beta.genus() != t.genus) throw Error(ErrorCode::DimensionMismatch, "Sym^2 element has the wrong genus");
  const Vector c = beta.lex();
  Scalar s;
  for (const auto& f : t.fiber) s += dot(c, f);
  return s;
}

CodifferentialMatrix codifferential_matrix(const ProductTable& t, const TraceSplit& split) {
  CodifferentialMatrix cm;
  cm.basis = minus_sym2_basis(split);
  const std::size_t n = t.residues.size();
  cm.values = Matrix(cm.basis.size(), n + 1);
  for (std::size_t r = 0; r < cm.basis.size(); ++r) {
    const Covector cv = codifferential(t, split, cm.basis[r]);
    for (std::size_t j = 0; j < n; ++j) cm.values(r, j) = cv.gamma[j];
    cm.values(r, n) = cv.gamma_s;
  }
  return cm;
}

namespace {

std::vector<SymSquareElement> combine(const std::vector<SymSquareElement>& basis, const std::vector<Vector>& coords,
                                      std::size_t g) {
  std::vector<SymSquareElement> out;
  for (const auto& x : coords) {
    SymSquareElement e(g);
    for (std::size_t r = 0; r < x.size(); ++r)
      if (!x[r].is_zero()) e = e + x[r] * basis[r];
    out.push_back(std::move(e));
  }
  return out;
}

// Kernel of the row-combination map x -> x^T M restricted to the first `cols` columns.
std::vector<Vector> left_kernel(const Matrix& m, std::size_t cols) {
  Matrix block(cols, m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c) block(c, r) = m(r, c);
  return kernel_basis(block);
}

}  // namespace

KernelE kernel_E(const CoveringDatum& d, const CodifferentialMatrix& cm) {
  const std::size_t n = d.charts.size();
  const std::size_t g = static_cast<std::size_t>(d.genus);
  KernelE ke;
  ke.basis = combine(cm.basis, left_kernel(cm.values, n), g);
  Matrix block(cm.values.rows(), n);
  for (std::size_t r = 0; r < block.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) block(r, c) = cm.values(r, c);
  ke.residue_rank = rank(block);
  ke.dim_ker_dPE = n - ke.residue_rank;
  const long expected = static_cast<long>(g * (g - 1) / 2) - static_cast<long>(n) + 1;
  ke.expected = static_cast<std::size_t>(std::max(expected, 0L));
  if (static_cast<long>(ke.dimension()) != expected)
    throw Error(ErrorCode::IdentityViolated, "dim Ker dP_E^dual = " + std::to_string(ke.dimension()) +
                                                 " but g(g-1)/2 - n + 1 = " + std::to_string(expected));
  if (ke.dim_ker_dPE != 1)
    throw Error(ErrorCode::IdentityViolated, "dim Ker dP_E = " + std::to_string(ke.dim_ker_dPE) + ", expected 1");
  return ke;
}

CriterionReport kernel_full(const ProductTable& t, const CodifferentialMatrix& cm, const KernelE& ke) {
  CriterionReport cr;
  const std::size_t n = t.residues.size();
  cr.dim_ker_dPE_dual = ke.dimension();
  for (const auto& b : ke.basis) {
    cr.basis_values.push_back(nu(t, b));
    if (!cr.witness && !cr.basis_values.back().is_zero()) {
      cr.witness = b;
      cr.witness_value = cr.basis_values.back();
    }
  }
  // Polarization certificate: nu on every pairwise sum as well.
  for (std::size_t a = 0; a < ke.basis.size(); ++a)
    for (std::size_t b = a + 1; b < ke.basis.size(); ++b) {
      const SymSquareElement s = ke.basis[a] + ke.basis[b];
      cr.pair_values.push_back(nu(t, s));
      if (!cr.witness && !cr.pair_values.back().is_zero()) {
        cr.witness = s;
        cr.witness_value = cr.pair_values.back();
      }
    }
  cr.nu_vanishes = !cr.witness.has_value();
  cr.dim_one = cr.witness.has_value();

  // Independent route through ranks of the full matrix.
  const std::size_t full_rank = rank(cm.values);
  cr.dim_ker_dP = n + 1 - full_rank;
  cr.dim_ker_dP_dual = left_kernel(cm.values, n + 1).size();
  const std::size_t drop = cr.dim_ker_dPE_dual - std::min(cr.dim_ker_dP_dual, cr.dim_ker_dPE_dual);
  if (cr.dim_ker_dP_dual > cr.dim_ker_dPE_dual || drop > 1)
    throw Error(ErrorCode::ConsistencyViolated, "Ker dP^dual is not a subspace of codimension <= 1 in Ker dP_E^dual");
  if ((drop == 1) != cr.dim_one)
    throw Error(ErrorCode::ConsistencyViolated, "fiber-sum witness disagrees with the rank of the full codifferential");
  if ((cr.dim_ker_dP == 1) != cr.dim_one)
    throw Error(ErrorCode::ConsistencyViolated, "dim Ker dP from ranks disagrees with the fiber-sum criterion");
  return cr;
}

}  // namespace prymker
