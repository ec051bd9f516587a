#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prymker/covering.hpp"
#include "prymker/elliptic.hpp"
#include "prymker/equivariant.hpp"

namespace prymker {

/// Cyclic cover w^N = h of y^2 = x^3 + A x + B with h = P(x) + y Q(x).
struct CyclicCoverSpec {
  mpq_class A, B;
  std::vector<mpq_class> P, Q;
  int N = 2;
  std::optional<std::array<mpq_class, 2>> base_point;  // unset: search
  int precision = 40;
};

/// Reads a cover spec file; numbers may be JSON integers or rational
/// strings such as "-3/4".  Errors are SchemaError / ParseError.
CyclicCoverSpec parse_cover_spec(const std::string& text);
std::string cover_spec_to_json_string(const CyclicCoverSpec& spec);

struct BuiltCover {
  CoveringDatum datum;
  CyclicAction action;
  CurvePoint base_point;
  bool base_point_searched = false;
  Scalar h_at_base;
  Divisor divisor_h;
  std::vector<int> characters;            // k_i: eta_i = f_i w^-k_i dx/y
  std::vector<CurveFunction> functions;   // f_i
};

/// x, y and pi^*(dx/y) as series in u = w at a simple zero b of hn, where
/// w^N = hn.  `prec` is the working precision in the base uniformizer.
struct BranchChart {
  TruncatedSeries x, y, alpha;
};
BranchChart branch_chart(const EllipticCurve& E, const CurveFunction& hn, const CurvePoint& b, int N, int prec);

/// Builds the covering datum and its deck action.  The branch points are the
/// simple zeros of h; h must have no other zeros or poles of order prime to N.
/// The fiber sits over the base point c and w is normalized so that
/// w^N = h / h(c).
BuiltCover build_cover(const CyclicCoverSpec& spec);

/// First rational point c != O with h(c) != 0, scanning x = 0, 1, -1, 2, ...
/// up to |x| <= 100 and taking y >= 0 before y < 0.
std::optional<CurvePoint> search_base_point(const EllipticCurve& E, const CurveFunction& h);

std::string action_to_json_string(const CyclicAction& action);
CyclicAction action_from_json_string(const std::string& text, const FieldSpec& field);

}  // namespace prymker
