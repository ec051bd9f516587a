// Command-line front end: build covering data for cyclic covers, analyze
// covering data, and run the genus-4 example end to end.

#include <CLI11.hpp>
#include <iostream>

#include "prymker/analysis.hpp"

namespace {

using namespace prymker;

int report_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return exit_code_for(e.code());
}

int cmd_build(const std::string& spec_path, const std::string& out_path, const std::string& action_out) {
  try {
    const CyclicCoverSpec spec = parse_cover_spec(read_text_file(spec_path));
    const BuiltCover cover = build_cover(spec);
    save(cover.datum, out_path);
    if (!action_out.empty()) write_text_file(action_out, action_to_json_string(cover.action));
    std::cout << "wrote " << out_path << ": genus " << cover.datum.genus << ", degree " << cover.datum.degree << ", "
              << cover.datum.charts.size() << " ramification charts, base point " << cover.base_point.to_string()
              << (cover.base_point_searched ? " (searched)" : "") << "\n";
    return kExitOk;
  } catch (const Error& e) {
    // Identity failures inside the builder still mean the cover spec could not be built.
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

int cmd_analyze(const std::string& datum_path, bool json, const std::string& action_path) {
  CoveringDatum datum;
  std::optional<CyclicAction> action;
  try {
    datum = load(datum_path);
    if (!action_path.empty()) action = action_from_json_string(read_text_file(action_path), datum.field);
  } catch (const Error& e) {
    return report_error(e);
  }
  const AnalysisOutcome out = analyze(datum, action);
  if (json)
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << render_text(out.report);
  return out.exit_code;
}

int cmd_demo(int precision, bool json) {
  const DemoOutcome out = run_demo_pirola(precision);
  if (json)
    std::cout << out.report.dump(2) << "\n";
  else
    std::cout << out.text;
  return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prym period map codifferential for coverings of elliptic curves"};
  app.require_subcommand(1);

  std::string spec_path, out_path, action_out;
  auto* build = app.add_subcommand("build", "Build a covering datum from a cyclic cover spec");
  build->add_option("spec", spec_path, "cover spec JSON")->required();
  build->add_option("--out", out_path, "output covering datum JSON")->required();
  build->add_option("--action-out", action_out, "also write the deck action JSON");

  std::string datum_path, action_path;
  bool json = false, text = false;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a covering datum");
  analyze_cmd->add_option("datum", datum_path, "covering datum JSON")->required();
  auto* json_flag = analyze_cmd->add_flag("--json", json, "machine-readable report");
  analyze_cmd->add_flag("--text", text, "human-readable report (default)")->excludes(json_flag);
  analyze_cmd->add_option("--action", action_path, "deck action JSON");

  int precision = 40;
  bool demo_json = false;
  auto* demo = app.add_subcommand("demo-pirola", "Build and check the genus-4 cyclic triple cover example");
  demo->add_option("--precision", precision, "coefficients per ramification chart");
  demo->add_flag("--json", demo_json, "machine-readable battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*build) return cmd_build(spec_path, out_path, action_out);
    if (*analyze_cmd) return cmd_analyze(datum_path, json, action_path);
    return cmd_demo(precision, demo_json);
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
