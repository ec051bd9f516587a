#pragma once

#include <optional>
#include <vector>

#include "prymker/diffalg.hpp"

namespace prymker {

/// A covector on the tangent space of the Hurwitz space: slots t_1..t_n (one
/// per ramification chart) and s (moving the base point of E).
struct Covector {
  Vector gamma;
  Scalar gamma_s;
  friend bool operator==(const Covector&, const Covector&) = default;
};

/// gamma_j = Res_{a_j}(m(phi) / pi^* alpha),  gamma_s = sum_k m(phi)/(pi^* alpha)^2 (x_k).
/// No 2 pi i factor.  Throws NotInMinusSpace unless phi lies in Sym^2(H0^-);
/// pass check_minus = false to evaluate the same formula on all of Sym^2.
Covector codifferential(const ProductTable& table, const TraceSplit& split, const SymSquareElement& phi,
                        bool check_minus = true);

/// The fiber sum  sum_k m(beta) / (pi^* alpha)^2 (x_k).
Scalar nu(const ProductTable& table, const SymSquareElement& beta);

/// Rows: the lexicographic basis of Sym^2(H0^-); columns gamma_1..gamma_n, gamma_s.
struct CodifferentialMatrix {
  std::vector<SymSquareElement> basis;
  Matrix values;
};

CodifferentialMatrix codifferential_matrix(const ProductTable& table, const TraceSplit& split);

struct KernelE {
  std::vector<SymSquareElement> basis;   // basis of Ker dP_E^dual inside Sym^2(H0^-)
  std::size_t residue_rank = 0;          // rank of the gamma_1..gamma_n block
  std::size_t expected = 0;              // g(g-1)/2 - n + 1
  std::size_t dim_ker_dPE = 0;           // n - residue_rank
  std::size_t dimension() const noexcept { return basis.size(); }
};

/// Ker dP_E^dual.  Throws IdentityViolated when its dimension differs from
/// g(g-1)/2 - n + 1 or Ker dP_E is not a line.
KernelE kernel_E(const CoveringDatum& datum, const CodifferentialMatrix& cm);

struct CriterionReport {
  bool dim_one = false;                     // dim Ker dP = 1
  std::size_t dim_ker_dP = 0;               // n + 1 - rank of the full matrix
  std::size_t dim_ker_dP_dual = 0;          // inside Sym^2(H0^-)
  std::size_t dim_ker_dPE_dual = 0;
  std::optional<SymSquareElement> witness;  // beta in Ker dP_E^dual with nu(beta) != 0
  Scalar witness_value;
  std::vector<Scalar> basis_values;         // nu on the kernel basis
  std::vector<Scalar> pair_values;          // nu on basis_a + basis_b, a < b
  bool nu_vanishes = false;                 // certified by basis and pairwise sums
};

/// Decides whether dim Ker dP = 1.  Asserts the kernel chain
/// Ker dP^dual in Ker dP_E^dual with codimension at most one
/// (ConsistencyViolated otherwise).
CriterionReport kernel_full(const ProductTable& table, const CodifferentialMatrix& cm, const KernelE& ke);

}  // namespace prymker
