// Command-line front end: solve a single prediction, sweep the guarantee
// curves, tabulate robustness bounds, and run seeded simulations. All output
// is deterministic given the flags; diagnostics go to stderr only.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "skirent/skirent.hpp"

namespace {

struct OutputOptions {
  std::string format = "json";
  std::string path;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--output", out.path, "Write output to a file instead of stdout");
}

int write_output(const OutputOptions& out, const std::string& text) {
  if (out.path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file: " << out.path << "\n";
    return 1;
  }
  file << text;
  return 0;
}

std::string render(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal randomized buy-or-rent strategies from probability predictions"};
  app.require_subcommand(1);

  double alpha = 0.0;
  double eps = 0.0;
  double alpha_used = 0.0;
  double alpha_true = 0.0;
  double buy_cost = 10.0;
  double alpha_start = 0.0;
  double alpha_stop = 1.0;
  double step = 0.001;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  int threads = 1;

  auto probability = CLI::Range(0.0, 1.0);

  auto* solve = app.add_subcommand("solve", "Report the optimal strategy for one prediction");
  solve->add_option("--alpha", alpha, "Predicted probability of a short season")
      ->required()
      ->check(probability);
  solve->add_option("--eps", eps, "Error radius of the prediction")->check(probability);
  solve->add_option("--buy-cost", buy_cost, "Buy price B")->capture_default_str();
  OutputOptions solve_out;
  add_output_flags(solve, solve_out);

  auto* sweep = app.add_subcommand("sweep", "Cutoff and guarantee curves over a grid of alpha");
  sweep->add_option("--alpha-start", alpha_start)->check(probability)->capture_default_str();
  sweep->add_option("--alpha-stop", alpha_stop)->check(probability)->capture_default_str();
  sweep->add_option("--step", step)->capture_default_str();
  sweep->add_option("--buy-cost", buy_cost, "Buy price B")->capture_default_str();
  OutputOptions sweep_out;
  add_output_flags(sweep, sweep_out);

  auto* robustness =
      app.add_subcommand("robustness", "Best/worst guarantee under maximal prediction error");
  robustness->add_option("--alpha-start", alpha_start)->check(probability)->capture_default_str();
  robustness->add_option("--alpha-stop", alpha_stop)->check(probability)->capture_default_str();
  robustness->add_option("--step", step)->capture_default_str();
  OutputOptions robustness_out;
  add_output_flags(robustness, robustness_out);

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo run of one strategy pairing");
  simulate->add_option("--alpha-used", alpha_used, "Prediction the skier tunes to")
      ->required()
      ->check(probability);
  simulate->add_option("--alpha-true", alpha_true, "True constraint on the adversary")
      ->required()
      ->check(probability);
  simulate->add_option("--buy-cost", buy_cost, "Buy price B")->capture_default_str();
  simulate->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--seed", seed)->capture_default_str();
  simulate->add_option("--threads", threads)->check(CLI::PositiveNumber)->capture_default_str();
  OutputOptions simulate_out;
  add_output_flags(simulate, simulate_out);

  auto* table1 = app.add_subcommand(
      "table1", "Three-arm experiment: correct, absent, and wrong predictions");
  table1->add_option("--buy-cost", buy_cost, "Buy price B")->capture_default_str();
  table1->add_option("--trials", trials)->check(CLI::PositiveNumber)->capture_default_str();
  table1->add_option("--seed", seed)->capture_default_str();
  table1->add_option("--threads", threads)->check(CLI::PositiveNumber)->capture_default_str();
  OutputOptions table1_out;
  add_output_flags(table1, table1_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  using namespace skirent;
  try {
    if (solve->parsed()) {
      const auto report_record =
          solver::guarantee_report(solver::Prediction(alpha, eps), buy_cost);
      const std::string text = solve_out.format == "csv"
                                   ? report::to_csv(report_record)
                                   : render(report::to_json(report_record));
      return write_output(solve_out, text);
    }
    if (sweep->parsed()) {
      const auto rows = report::emit_sweep(alpha_start, alpha_stop, step, buy_cost);
      const std::string text = sweep_out.format == "csv"
                                   ? report::to_csv(rows)
                                   : render(report::to_json(rows));
      return write_output(sweep_out, text);
    }
    if (robustness->parsed()) {
      const auto rows = report::emit_robustness(alpha_start, alpha_stop, step);
      const std::string text = robustness_out.format == "csv"
                                   ? report::to_csv(rows)
                                   : render(report::to_json(rows));
      return write_output(robustness_out, text);
    }
    if (simulate->parsed()) {
      sim::TrialConfig config{buy_cost, solver::optimal_cutoff_z(alpha_used),
                              alpha_true, trials, seed};
      std::vector<report::SimulationRow> rows{
          {"simulate", sim::run(config, threads),
           solver::cross_expected_cr(alpha_used, alpha_true)}};
      const std::string text = simulate_out.format == "csv"
                                   ? report::to_csv(rows)
                                   : render(report::to_json(rows));
      return write_output(simulate_out, text);
    }
    // table1
    const auto arms = sim::run_table1(buy_cost, trials, seed, threads);
    std::vector<report::SimulationRow> rows;
    rows.reserve(arms.size());
    for (const auto& arm : arms) {
      rows.push_back({arm.label, arm.summary, arm.theoretical});
    }
    const std::string text = table1_out.format == "csv"
                                 ? report::to_csv(rows)
                                 : render(report::to_json(rows));
    return write_output(table1_out, text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
