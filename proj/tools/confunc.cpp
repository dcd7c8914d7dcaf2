// confunc: tables, bound landscapes, verification suites and state files.

#include "confunc/cli/commands.hpp"
#include "confunc/state_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>

namespace {

using confunc::cli::OutputFormat;
using confunc::cli::RunConfig;
using confunc::cli::Table;
using confunc::cli::UsageError;

void emit(const Table& table, const RunConfig& cfg) {
  if (!cfg.output_path) {
    confunc::cli::write_table(std::cout, table, cfg.output_format);
    return;
  }
  std::ofstream out(*cfg.output_path);
  if (!out) throw std::runtime_error("cannot open " + *cfg.output_path);
  confunc::cli::write_table(out, table, cfg.output_format);
}

std::vector<double> collect(const std::vector<double>& singles, const std::string& range) {
  std::vector<double> values = singles;
  if (!range.empty()) {
    const auto more = confunc::cli::parse_range(range);
    values.insert(values.end(), more.begin(), more.end());
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confidence-interval uncertainty bounds and Slepian eigenvalues"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<int> order;
  std::string out_path;
  app.add_option("--hbar", cfg.hbar, "Reduced Planck constant")->capture_default_str();
  app.add_option("--order", order, "Gauss-Legendre order (overrides CONFUNC_ORDER)");
  app.add_option("--format", cfg.output_format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                              {"json", OutputFormat::json}}));
  app.add_option("--out", out_path, "Output file (default stdout)");
  app.add_option("--seed", cfg.seed, "Random corpus seed")->capture_default_str();
  app.add_option("--points", cfg.grid_points, "Grid points for state construction")
      ->capture_default_str();

  std::vector<double> cs;
  std::string c_range;
  auto* lambda0 = app.add_subcommand("lambda0", "Largest Slepian eigenvalue");
  lambda0->add_option("--c", cs, "Concentration value(s)");
  lambda0->add_option("--range", c_range, "lo:hi:step");

  std::optional<double> tx, tp;
  std::string grid_spec;
  auto* bounds = app.add_subcommand("bounds", "Bound report at a pair, or a landscape");
  bounds->add_option("--tx", tx, "Position confidence");
  bounds->add_option("--tp", tp, "Momentum confidence");
  bounds->add_option("--grid", grid_spec, "N (interior axis) or lo:hi:step");

  std::vector<double> thetas;
  std::string theta_range;
  auto* compare = app.add_subcommand("compare", "Gaussian versus Slepian interval products");
  compare->add_option("--theta", thetas, "Confidence level(s)");
  compare->add_option("--range", theta_range, "lo:hi:step");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run verification suites");
  verify->add_option("suite", suite, "theorem1 | lenard | two-route | dominance | all")
      ->capture_default_str();

  std::string kind;
  confunc::cli::StateParams params;
  auto* state = app.add_subcommand("state", "Build a state; write it and its densities");
  state->add_option("kind", kind, "slepian | rect-sinc | gaussian")->required();
  state->add_option("--c", params.c, "Concentration (slepian)");
  state->add_option("--L", params.length, "Position interval length");
  state->add_option("--W", params.width, "Momentum band width (rect-sinc)");
  state->add_option("--P", params.mix, "Box weight (rect-sinc)");
  state->add_option("--sigma", params.sigma, "Position spread (gaussian)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.quadrature_order = order ? *order : confunc::cli::default_order();
    if (!out_path.empty()) cfg.output_path = out_path;
    cfg.validate();

    if (*lambda0) {
      const auto values = collect(cs, c_range);
      if (values.empty()) throw UsageError("lambda0 needs --c or --range");
      emit(confunc::cli::cmd_lambda0(values, cfg), cfg);
    } else if (*bounds) {
      if (!grid_spec.empty()) {
        if (tx || tp) throw UsageError("--grid excludes --tx/--tp");
        emit(confunc::cli::cmd_bounds_grid(confunc::cli::parse_grid(grid_spec), cfg), cfg);
      } else {
        if (!tx || !tp) throw UsageError("bounds needs --tx and --tp, or --grid");
        std::vector<confunc::bounds::ConfidencePair> pairs;
        try {
          pairs.emplace_back(*tx, *tp);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
        emit(confunc::cli::cmd_bounds(pairs, cfg), cfg);
      }
    } else if (*compare) {
      auto values = collect(thetas, theta_range);
      if (values.empty()) values = {0.55, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99};
      emit(confunc::cli::cmd_compare(values, cfg), cfg);
    } else if (*verify) {
      const auto outcome = confunc::cli::cmd_verify(suite, cfg);
      emit(outcome.table, cfg);
      return outcome.all_passed ? 0 : 1;
    } else if (*state) {
      const auto outcome = confunc::cli::cmd_state(kind, params, cfg);
      confunc::cli::write_table(std::cout, outcome.summary, cfg.output_format);
      if (cfg.output_path) {
        std::ofstream state_file(*cfg.output_path);
        if (!state_file) throw std::runtime_error("cannot open " + *cfg.output_path);
        confunc::states::write_state(state_file, outcome.position);
        const std::string density_path = *cfg.output_path + ".density.csv";
        std::ofstream density_file(density_path);
        if (!density_file) throw std::runtime_error("cannot open " + density_path);
        confunc::cli::write_table(density_file, outcome.densities, OutputFormat::csv);
      } else {
        std::cerr << "note: pass --out to write the state and density files\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
