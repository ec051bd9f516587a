#pragma once

#include <string>
#include <vector>

#include "prymker/geometry.hpp"

namespace prymker {

/// Chart j is carried by the generator to chart `target`; the target's local
/// parameter pulled back along the generator equals reparam(u_j).
struct ChartMap {
  std::size_t target = 0;
  TruncatedSeries reparam;
};

/// A cyclic group of deck transformations acting on the datum.  Row i of
/// `matrix` holds the coordinates of g^* eta_i; the generator sends fiber
/// point k to fiber point fiber_permutation[k].
struct CyclicAction {
  int order = 1;
  Matrix matrix;
  std::vector<ChartMap> chart_maps;
  std::vector<std::size_t> fiber_permutation;
};

/// Identity action of order 1.
CyclicAction trivial_action(const CoveringDatum& datum);

/// Findings of the structural checks (empty when the action is consistent):
/// (g^*)^N = 1, pi^* alpha fixed, permutations of order dividing N,
/// compatibility with the fiber ratios and with every chart expansion.
std::vector<Finding> check_action(const CoveringDatum& datum, const TraceSplit& split, const CyclicAction& action);

/// Eigenspace decomposition of H0(omega_F) (and of Sym^2) under the
/// generator.  Index e of `spaces` is the character zeta_N^e.  For N = 3 the
/// generator is replaced by its square whenever that makes the
/// zeta-eigenspace the larger of the two nontrivial ones.
struct Eigenspaces {
  int order = 1;
  int generator_power = 1;                 // 1, or N - 1 after relabeling
  std::vector<std::vector<Vector>> spaces; // eigenvector coordinates
  std::vector<std::size_t> dims() const;
};

/// Matrix of the (possibly relabeled) generator acting on coordinates.
Matrix generator_matrix(const CyclicAction& action, int power);

Eigenspaces eigenspaces(const CoveringDatum& datum, const CyclicAction& action);

/// Matrix of phi -> g^* phi on lexicographic Sym^2 coordinates.
Matrix sym2_action(const Matrix& action);

struct Sym2Eigenspaces {
  std::vector<std::vector<Vector>> full;   // lex coordinates, per character
  std::vector<std::vector<Vector>> minus;  // the part inside Sym^2(H0^-)
  std::vector<std::size_t> full_dims() const;
  std::vector<std::size_t> minus_dims() const;
};

Sym2Eigenspaces sym2_eigenspaces(const CoveringDatum& datum, const CyclicAction& action, const Eigenspaces& eig,
                                 const TraceSplit& split);

/// m transported along the action: m(g^* phi) expressed through m(phi) on
/// the image charts and permuted fiber points.
QuadDifferentialData transported_multiply(const ProductTable& table, const CyclicAction& action,
                                          const SymSquareElement& phi);

struct BatteryCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct BatteryReport {
  std::vector<std::size_t> eigen_dims;
  std::vector<std::size_t> sym2_dims;
  std::vector<std::size_t> sym2_minus_dims;
  int generator_power = 1;
  std::vector<BatteryCheck> checks;
  bool all_pass() const;
};

/// Everything the analysis pipeline computes for one datum.
struct PipelineResults {
  ValidationReport validation;
  ProductTable table;
  TraceSplit split;
  CanonicalFrame frame;
  QuadricSpace quadrics;
  CodifferentialMatrix cm;
  KernelE kernel;
  CriterionReport criterion;
};

/// The genus-4 Galois battery for a cyclic cover of degree 3 branched at
/// three points.  PreconditionFailed unless g = 4, N = 3 and the fiber is a
/// single orbit.
BatteryReport pirola_battery(const CoveringDatum& datum, const CyclicAction& action, const PipelineResults& results);

}  // namespace prymker
