#pragma once

#include <string>
#include <vector>

#include "prymker/prym.hpp"

namespace prymker {

/// Coordinates adapted to the splitting: u_0 is dual to pi^* alpha and
/// u_1..u_{g-1} to the minus basis.  In these coordinates q^- = (1:0:...:0)
/// and H^- = {u_0 = 0}.
struct CanonicalFrame {
  Matrix adapted;          // rows: alpha_coords, minus_basis...
  Matrix adapted_inverse;
  Vector qminus;           // point of the dual space, eta-dual coordinates
  Vector hminus;           // the linear form q -> q(pi^* alpha)
};

CanonicalFrame canonical_frame(const TraceSplit& split);

/// G expressed in adapted coordinates: C^-T phi C^-1.
Matrix adapted_gram(const CanonicalFrame& frame, const SymSquareElement& G);

struct QuadricDecomposition {
  SymSquareElement G;
  SymSquareElement G_minus;
  Vector omega_Q;          // eta coordinates; G = G_minus + pi^* alpha (.) omega_Q
};

QuadricDecomposition decompose_quadric(const TraceSplit& split, const CanonicalFrame& frame,
                                       const SymSquareElement& G);

/// Coefficient of pi^* alpha (.) pi^* alpha in adapted coordinates, i.e. G(q^-).
Scalar evaluate_at_qminus(const CanonicalFrame& frame, const SymSquareElement& G);

struct FunctPointEntry {
  std::size_t quadric = 0;
  Scalar lhs;              // nu(G^-), fiber route
  Scalar rhs;              // G(q^-), coefficient route
  Scalar trace_omega;      // tau(omega_Q)
  bool agree = false;      // lhs == 0 <=> rhs == 0, and lhs == -tau(omega_Q)
};

/// Dual-route check of  nu(G^-) = 0 <=> G(q^-) = 0  for every basis quadric.
/// Throws PreconditionFailed for an element outside Ker(m) and
/// EquivalenceViolated when the routes disagree.
std::vector<FunctPointEntry> functpoint_check(const ProductTable& table, const TraceSplit& split,
                                              const CanonicalFrame& frame, const QuadricSpace& quadrics);

struct HalfGeoReport {
  bool qminus_in_all = true;   // vacuously true without quadrics
  bool implies_dim1 = false;
};

/// q^- outside some quadric forces dim Ker dP = 1; ConsistencyViolated if
/// the criterion says otherwise.
HalfGeoReport halfgeo_criterion(const CanonicalFrame& frame, const QuadricSpace& quadrics,
                                const CriterionReport& criterion);

struct LedgerIdentity {
  std::string name;
  std::string statement;
  long lhs = 0;
  long rhs = 0;
  bool holds = false;
};

struct LedgerReport {
  long h0_quadrics = 0;
  long dim_ker_E = 0;
  long deg_rbar = 0;
  long multiplication_rank = 0;
  long residue_rank = 0;           // rank of dh_E^dual on H0(omega^2)
  long dim_ker_dh = 0;             // 3g - 3 - residue_rank
  long projected_rank = 0;         // rank of the quadrics projected to Sym^2(H0^-)
  bool projections_in_kernel = false;
  long alpha_multiples_rank = 0;   // rank of m(pi^* alpha (.) eta_i) inside Ker dh_E^dual
  std::vector<LedgerIdentity> identities;
  bool all_hold() const;
};

/// Dimension bookkeeping: deg Rbar identity, injectivity of the projection of
/// quadrics into Ker dP_E^dual, and the exact-sequence identity
/// dim Ker dP_E^dual = h0(I_F(2)) + dim Ker dh_E^dual - g.
LedgerReport dimension_ledger(const CoveringDatum& datum, const ProductTable& table, const TraceSplit& split,
                              const CanonicalFrame& frame, const QuadricSpace& quadrics, const KernelE& ke);

}  // namespace prymker
