#pragma once

#include <optional>
#include <string>

#include "prymker/builder.hpp"
#include "prymker/json_io.hpp"

namespace prymker {

/// Exit codes shared by the CLI and the report.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitIdentity = 3;

int exit_code_for(ErrorCode code);

/// Validates the datum and runs every computation.  A failed validation is
/// raised as its most informative finding (InsufficientPrecision first).
PipelineResults run_pipeline(const CoveringDatum& datum);

struct AnalysisOutcome {
  int exit_code = kExitOk;
  Json report;
  std::optional<PipelineResults> results;
  std::optional<LedgerReport> ledger;
  std::optional<BatteryReport> battery;
};

/// Full report for one datum; never throws on mathematical or input errors,
/// which are recorded in report["error"] and the exit code instead.
AnalysisOutcome analyze(const CoveringDatum& datum, const std::optional<CyclicAction>& action);

std::string render_text(const Json& report);

/// The genus-4 example: y^2 = x^3 + 1, h = y - x - 1, N = 3, base point
/// searched.
CyclicCoverSpec pirola_spec(int precision = 40);
/// y^2 = x^3 + 17 with h = (x + 2)(x + 1)(x - 2), N = 2 (genus 4).
CyclicCoverSpec bielliptic_g4_spec(int precision = 40);
/// y^2 = x^3 + 17 with h = x^2 - 4x - 9 - y, N = 2 (genus 3).  h must
/// involve y: a function of x alone would make the cover hyperelliptic.
CyclicCoverSpec bielliptic_g3_spec(int precision = 40);

struct DemoOutcome {
  int exit_code = kExitOk;
  Json report;
  std::string text;
};

DemoOutcome run_demo_pirola(int precision);

}  // namespace prymker
