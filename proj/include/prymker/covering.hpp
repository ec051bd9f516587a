#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "prymker/matrix.hpp"
#include "prymker/series.hpp"

namespace prymker {

/// Local data at one ramification point a_j.  Every series is a coefficient
/// of du in one local parameter u at a_j; the parameter itself is arbitrary.
struct RamificationChart {
  std::string label;
  int index = 0;                          // n_j
  TruncatedSeries alpha_pullback;         // pi^* alpha
  std::vector<TruncatedSeries> forms;     // one per basis differential
  friend bool operator==(const RamificationChart&, const RamificationChart&) = default;
};

/// Values of eta_i / pi^* alpha at the d points over one unramified base point.
struct FiberChart {
  std::vector<std::string> labels;
  std::vector<Vector> ratios;             // ratios[k][i]
  std::optional<std::array<Scalar, 2>> base_point;  // affine (x, y) when known
  friend bool operator==(const FiberChart&, const FiberChart&) = default;
};

struct CoveringDatum {
  FieldSpec field{1};
  int genus = 0;
  int degree = 0;
  std::vector<std::string> basis_names;
  std::optional<std::size_t> alpha_index_hint;
  std::vector<RamificationChart> charts;
  FiberChart fiber;

  std::size_t branch_count() const noexcept { return charts.size(); }
  /// deg R - n = sum (n_j - 2).
  int reduced_ramification_degree() const;
  friend bool operator==(const CoveringDatum&, const CoveringDatum&) = default;
};

struct Finding {
  std::string check;
  ErrorCode code;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;
  std::vector<int> chart_precision;  // T_j, the number of known coefficients per chart
  int coefficient_count = 0;         // sum T_j + d
  bool independence_certified = false;
  bool quadric_certified = false;

  bool ok() const noexcept { return findings.empty(); }
  /// Whether some finding carries the given code.
  bool has(ErrorCode code) const;
  /// Throws the first finding as an Error; no-op when ok().
  void raise() const;
};

/// Runs every check and collects the failures; never stops at the first one.
ValidationReport validate(const CoveringDatum& datum);

/// T_j: the number of certified coefficients (exponents 0..T_j-1) of the
/// forms at one chart.
int chart_terms(const RamificationChart& chart);

/// Recommended chart truncation: ceil((4g-3)/n) + n_j + 2.
int default_truncation(int genus, int branch_count, int index);

/// Coefficient matrix underlying the independence certificate: row i holds the
/// known chart coefficients of eta_i followed by its fiber ratios.
Matrix coefficient_matrix(const CoveringDatum& datum);

/// Re-expresses every series of chart `chart` in the parameter v with
/// u = v * unit(v); unit(0) must be nonzero.  Residues and the certified
/// coefficient span are unchanged.
CoveringDatum reparametrize_chart(const CoveringDatum& datum, std::size_t chart, const TruncatedSeries& unit);

/// New datum for the basis eta'_i = sum_j B_ij eta_j (B invertible).
CoveringDatum change_basis(const CoveringDatum& datum, const Matrix& B);

std::string to_json_string(const CoveringDatum& datum);
CoveringDatum from_json_string(const std::string& text);
CoveringDatum load(const std::string& path);
void save(const CoveringDatum& datum, const std::string& path);

}  // namespace prymker
