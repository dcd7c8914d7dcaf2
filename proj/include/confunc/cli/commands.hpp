#pragma once

#include "confunc/bounds.hpp"
#include "confunc/cli/table.hpp"
#include "confunc/states.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace confunc::cli {

/// Malformed command-line input; the front end maps it to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

struct RunConfig {
  double hbar = 1.0;
  int quadrature_order = 400;
  int grid_points = 4096;
  OutputFormat output_format = OutputFormat::csv;
  std::optional<std::string> output_path;
  std::uint64_t seed = 42;

  /// Throws UsageError unless every numeric field is positive.
  void validate() const;
};

/// Default quadrature order, overridden by CONFUNC_ORDER when set.
[[nodiscard]] int default_order();

/// "lo:hi:step" inclusive of hi (within step/1e6), or a single number.
[[nodiscard]] std::vector<double> parse_range(std::string_view spec);

/// Grid spec for the bounds landscape: "N" gives the interior axis
/// {1/(N+1), ..., N/(N+1)}; "lo:hi:step" gives an explicit axis.
[[nodiscard]] std::vector<double> parse_grid(std::string_view spec);

/// Columns: c, lambda0, one_minus_lambda0, small_c, large_c.
[[nodiscard]] Table cmd_lambda0(std::span<const double> cs, const RunConfig& config);

/// One full BoundReport per pair.
[[nodiscard]] Table cmd_bounds(std::span<const bounds::ConfidencePair> pairs,
                               const RunConfig& config);

/// Landscape over axis x axis. Columns: theta_x, theta_p, lp_interval, region,
/// where region is trivial, bounded, or divergent (value inf).
[[nodiscard]] Table cmd_bounds_grid(std::span<const double> axis, const RunConfig& config);

/// Columns: theta, gaussian, slepian, ratio.
[[nodiscard]] Table cmd_compare(std::span<const double> thetas, const RunConfig& config);

struct VerifyOutcome {
  Table table;  // suite, check, measured, tolerance, pass
  bool all_passed;
};

/// Suites: theorem1, lenard, two-route, dominance, all. Throws UsageError otherwise.
[[nodiscard]] VerifyOutcome cmd_verify(std::string_view suite, const RunConfig& config);

struct StateParams {
  std::optional<double> c;
  std::optional<double> length;
  std::optional<double> width;
  std::optional<double> mix;
  std::optional<double> sigma;
};

struct StateOutcome {
  states::GriddedState position;
  states::GriddedState momentum;
  Table summary;    // quantity, value
  Table densities;  // x, rho_x, p, rho_p
};

/// kind: slepian (c, L), rect-sinc (P, L, W), gaussian (sigma).
/// Throws UsageError for an unknown kind or missing/invalid parameters.
[[nodiscard]] StateOutcome cmd_state(std::string_view kind, const StateParams& params,
                                     const RunConfig& config);

}  // namespace confunc::cli
