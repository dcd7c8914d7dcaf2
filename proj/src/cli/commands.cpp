#include "confunc/cli/commands.hpp"

#include "confunc/numerics.hpp"
#include "confunc/slepian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <random>
#include <thread>

namespace confunc::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Applies f to every element, preserving input order in the result.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& inputs, F f) {
  using R = decltype(f(inputs.front()));
  std::vector<R> results(inputs.size());
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, inputs.size() + 1);
  if (workers <= 1 || inputs.size() < 2) {
    for (std::size_t i = 0; i < inputs.size(); ++i) results[i] = f(inputs[i]);
    return results;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < inputs.size(); i += workers) results[i] = f(inputs[i]);
    });
  pool.clear();
  return results;
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw UsageError("not a number: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Cell optional_cell(const std::optional<double>& v) {
  if (v) return *v;
  return std::monostate{};
}

std::string bound_text(double v) { return "<= " + format_number(v); }

// Grid with equal extent in position and momentum: D = sqrt(2 pi hbar n).
states::Grid balanced_grid(int n, double hbar) {
  return states::Grid::symmetric(0.5 * std::sqrt(2.0 * kPi * hbar * n), n);
}

void add_check(Table& t, std::string_view suite, std::string check, double measured,
               std::string tolerance, bool pass) {
  t.add_row({std::string(suite), std::move(check), measured, std::move(tolerance),
             std::string(pass ? "pass" : "fail")});
}

Table verify_table() { return Table{{"suite", "check", "measured", "tolerance", "pass"}, {}}; }

void verify_theorem1(Table& t, const RunConfig& cfg) {
  for (const double size : {0.1, 0.01}) {
    const auto grid = states::rect_sinc_grid(size, size, cfg.hbar, 7);
    const auto rs = states::rect_sinc_state(grid, size, size, 0.5, cfg.hbar);
    const double px = states::probability_in_interval(rs.state, -size / 2, size / 2);
    const auto momentum = states::fourier_transform(rs.state);
    const double pp = states::probability_in_interval(momentum, -size / 2, size / 2);
    const std::string tag = "L=W=" + format_number(size);
    add_check(t, "theorem1", "position_mass " + tag, px, "> 0.5", px > 0.5);
    add_check(t, "theorem1", "momentum_mass " + tag, pp, "> 0.5", pp > 0.5);
  }
}

void verify_lenard(Table& t, const RunConfig& cfg) {
  const auto grid = balanced_grid(cfg.grid_points, cfg.hbar);
  const auto corpus = states::random_corpus(grid, 50, cfg.seed, cfg.hbar);
  std::mt19937_64 engine(cfg.seed + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double extent = grid.x_max() - grid.x_min();
  const double p_edge = states::conjugate_grid(grid, cfg.hbar).x_max();

  int failures = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& state : corpus) {
    const auto momentum = states::fourier_transform(state);
    for (int k = 0; k < 20; ++k) {
      // Interval pairs with c spread over [0.05, 5].
      const double c = 0.05 + 4.95 * unit(engine);
      const double lx = extent * (0.05 + 0.45 * unit(engine));
      const double lp = 4.0 * cfg.hbar * c / lx;
      const double cx = (unit(engine) - 0.5) * (extent - lx);
      const double cp = (unit(engine) - 0.5) * std::max(0.0, p_edge - lp);
      const auto w = states::verify_lenard(state, momentum, {cx - lx / 2, cx + lx / 2},
                                           {cp - lp / 2, cp + lp / 2});
      worst = std::min(worst, w.lhs - w.rhs);
      if (!w.holds) ++failures;
    }
  }
  add_check(t, "lenard", "corpus min(lhs - rhs), 50 states x 20 intervals", worst, ">= -1e-06",
            failures == 0);

  // Saturation by the principal Slepian state on its own intervals.
  const slepian::Concentration c(1.5);
  const double length = 2.0;
  const double width = 4.0 * cfg.hbar * c.value() / length;
  const auto sgrid = states::slepian_grid(c, length, cfg.hbar, std::max(cfg.grid_points, 1 << 17));
  const auto sstate = states::slepian_state(c, length, cfg.hbar, sgrid, cfg.quadrature_order);
  const auto w = states::verify_lenard(sstate, {-length / 2, length / 2}, {-width / 2, width / 2});
  const double gap = std::abs(w.lhs - w.rhs);
  add_check(t, "lenard", "slepian c=1.5 |lhs - rhs|", gap, bound_text(1e-4), gap <= 1e-4);
}

void verify_two_route(Table& t, const RunConfig& cfg) {
  for (const double cv : {0.5, 1.0, 1.5, 2.0}) {
    const slepian::Concentration c(cv);
    const double diff = std::abs(slepian::a_matrix_lambda0(c, slepian::kDefaultTruncation) -
                                 slepian::lambda0(c, cfg.quadrature_order));
    add_check(t, "two-route", "|normA/pi - lambda0| c=" + format_number(cv), diff,
              bound_text(1e-6), diff <= 1e-6);
  }
}

void verify_dominance(Table& t, const RunConfig& cfg) {
  const auto axis = parse_grid("99");
  int violations = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  for (double tx : axis) {
    for (double tp : axis) {
      const bounds::ConfidencePair pair(tx, tp);
      const double gap =
          bounds::lp_measurable_bound(pair, cfg.hbar) - bounds::donoho_stark_bound(pair, cfg.hbar);
      if (gap < 0.0) ++violations;
      // Strictness away from rounding on the antidiagonal itself.
      if (tx + tp > 1.0 + 1e-9) {
        min_gap = std::min(min_gap, gap);
        if (!(gap > 0.0)) ++violations;
      }
    }
  }
  add_check(t, "dominance", "min(LP - DS) over bounded 99x99 grid", min_gap, "> 0",
            violations == 0);
}

}  // namespace

void RunConfig::validate() const {
  if (!(hbar > 0.0 && std::isfinite(hbar))) throw UsageError("--hbar must be positive");
  if (quadrature_order < 2) throw UsageError("--order must be >= 2");
  if (grid_points < 16) throw UsageError("grid points must be >= 16");
}

int default_order() {
  if (const char* env = std::getenv("CONFUNC_ORDER"); env != nullptr && *env != '\0') {
    const double v = parse_number(env);
    if (v < 2 || v != std::floor(v)) throw UsageError("CONFUNC_ORDER must be an integer >= 2");
    return static_cast<int>(v);
  }
  return slepian::kDefaultOrder;
}

std::vector<double> parse_range(std::string_view spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return {parse_number(parts[0])};
  if (parts.size() != 3) throw UsageError("range must be lo:hi:step");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  const double step = parse_number(parts[2]);
  if (!(step > 0.0) || hi < lo) throw UsageError("range needs lo <= hi and step > 0");
  std::vector<double> values;
  const auto count = static_cast<long>(std::floor((hi - lo) / step * (1.0 + 1e-12) + 1e-6));
  if (count > 10'000'000) throw UsageError("range has too many points");
  for (long i = 0; i <= count; ++i) values.push_back(lo + static_cast<double>(i) * step);
  return values;
}

std::vector<double> parse_grid(std::string_view spec) {
  if (spec.find(':') != std::string_view::npos) {
    auto axis = parse_range(spec);
    for (double v : axis)
      if (v < 0.0 || v > 1.0 + 1e-12) throw UsageError("grid values must lie in [0, 1]");
    for (double& v : axis) v = std::min(v, 1.0);
    return axis;
  }
  const double n = parse_number(spec);
  if (n < 1 || n != std::floor(n) || n > 10'000) throw UsageError("grid size must be 1..10000");
  std::vector<double> axis;
  for (int i = 1; i <= static_cast<int>(n); ++i) axis.push_back(i / (n + 1.0));
  return axis;
}

Table cmd_lambda0(std::span<const double> cs, const RunConfig& config) {
  config.validate();
  std::vector<slepian::Concentration> inputs;
  for (double c : cs) {
    if (!(c >= 0.0)) throw UsageError("c must be >= 0");
    inputs.emplace_back(c);
  }
  const auto values = parallel_map(inputs, [&](const slepian::Concentration& c) {
    return slepian::lambda0(c, config.quadrature_order);
  });
  Table t{{"c", "lambda0", "one_minus_lambda0", "small_c", "large_c"}, {}};
  for (std::size_t i = 0; i < inputs.size(); ++i)
    t.add_row({inputs[i].value(), values[i], 1.0 - values[i], slepian::lambda0_small_c(inputs[i]),
               slepian::lambda0_large_c(inputs[i])});
  return t;
}

Table cmd_bounds(std::span<const bounds::ConfidencePair> pairs, const RunConfig& config) {
  config.validate();
  Table t{{"theta_x", "theta_p", "region", "angular_target", "lp_measurable", "lp_interval",
           "donoho_stark", "elementary", "gaussian_product"},
          {}};
  for (const auto& pair : pairs) {
    try {
      const auto r = bounds::report(pair, config.hbar, config.quadrature_order);
      t.add_row({pair.theta_x(), pair.theta_p(), std::string(bounds::to_string(r.region)),
                 r.angular_target, r.lp_measurable, r.lp_interval, r.donoho_stark,
                 optional_cell(r.elementary), optional_cell(r.gaussian_product)});
    } catch (const bounds::DivergentBound&) {
      t.add_row({pair.theta_x(), pair.theta_p(), std::string("divergent"),
                 bounds::angular_target(pair), bounds::lp_measurable_bound(pair, config.hbar),
                 std::numeric_limits<double>::infinity(),
                 bounds::donoho_stark_bound(pair, config.hbar),
                 optional_cell(bounds::elementary_bound(pair)), std::monostate{}});
    }
  }
  return t;
}

Table cmd_bounds_grid(std::span<const double> axis, const RunConfig& config) {
  config.validate();
  // Distinct angular targets only; T is symmetric in its arguments bit for bit.
  std::vector<double> targets;
  for (double tx : axis)
    for (double tp : axis) {
      const double target = bounds::angular_target({tx, tp});
      if (target > 0.0 && target < 1.0) targets.push_back(target);
    }
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  std::map<double, double> inverse_of;
  if (!targets.empty()) {
    const slepian::Lambda0InverseTable table(targets.back(), config.quadrature_order);
    const auto inverses =
        parallel_map(targets, [&](double target) { return table(target).value(); });
    for (std::size_t i = 0; i < targets.size(); ++i) inverse_of[targets[i]] = inverses[i];
  }

  Table t{{"theta_x", "theta_p", "lp_interval", "region"}, {}};
  for (double tx : axis) {
    for (double tp : axis) {
      const bounds::ConfidencePair pair(tx, tp);
      const double target = bounds::angular_target(pair);
      if (target >= 1.0) {
        t.add_row({tx, tp, std::numeric_limits<double>::infinity(), std::string("divergent")});
        continue;
      }
      const double value = target > 0.0 ? 4.0 * config.hbar * inverse_of.at(target) : 0.0;
      t.add_row({tx, tp, value, std::string(bounds::to_string(bounds::classify_region(pair)))});
    }
  }
  return t;
}

Table cmd_compare(std::span<const double> thetas, const RunConfig& config) {
  config.validate();
  for (double theta : thetas)
    if (!(theta > 0.0 && theta < 1.0)) throw UsageError("theta must lie in (0, 1)");
  const std::vector<double> inputs(thetas.begin(), thetas.end());
  const auto slepians = parallel_map(inputs, [&](double theta) {
    return bounds::lp_interval_bound({theta, theta}, config.hbar, config.quadrature_order);
  });
  Table t{{"theta", "gaussian", "slepian", "ratio"}, {}};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double g = bounds::gaussian_interval_product(inputs[i], config.hbar);
    const double ratio = slepians[i] > 0.0 ? g / slepians[i]
                                           : std::numeric_limits<double>::infinity();
    t.add_row({inputs[i], g, slepians[i], ratio});
  }
  return t;
}

VerifyOutcome cmd_verify(std::string_view suite, const RunConfig& config) {
  config.validate();
  Table t = verify_table();
  const bool all = suite == "all";
  if (!all && suite != "theorem1" && suite != "lenard" && suite != "two-route" &&
      suite != "dominance")
    throw UsageError("unknown verify suite '" + std::string(suite) + "'");
  if (all || suite == "theorem1") verify_theorem1(t, config);
  if (all || suite == "lenard") verify_lenard(t, config);
  if (all || suite == "two-route") verify_two_route(t, config);
  if (all || suite == "dominance") verify_dominance(t, config);

  bool passed = true;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    passed = passed && std::get<std::string>(t.at(r, "pass")) == "pass";
  return {std::move(t), passed};
}

StateOutcome cmd_state(std::string_view kind, const StateParams& params,
                       const RunConfig& config) {
  config.validate();
  const auto need = [](const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing ") + flag);
    if (!(*v > 0.0 && std::isfinite(*v))) throw UsageError(std::string(flag) + " must be positive");
    return *v;
  };
  const double hbar = config.hbar;
  Table summary{{"quantity", "value"}, {}};
  const auto add = [&summary](std::string name, double v) {
    summary.add_row({std::move(name), v});
  };

  std::optional<states::GriddedState> position;
  std::optional<states::GriddedState> momentum;
  try {
    if (kind == "slepian") {
      const slepian::Concentration c(need(params.c, "--c"));
      const double length = need(params.length, "--L");
      const double width = 4.0 * hbar * c.value() / length;
      const auto grid = states::slepian_grid(c, length, hbar, config.grid_points);
      position = states::slepian_state(c, length, hbar, grid, config.quadrature_order);
      momentum = states::fourier_transform(*position);
      add("c", c.value());
      add("L", length);
      add("W", width);
      add("lambda0", slepian::lambda0(c, config.quadrature_order));
      add("position_mass_in_X", states::probability_in_interval(*position, -length / 2, length / 2));
      add("momentum_mass_in_band", states::probability_in_interval(*momentum, -width / 2, width / 2));
    } else if (kind == "rect-sinc") {
      if (!params.mix || !(*params.mix >= 0.0 && *params.mix <= 1.0))
        throw UsageError("--P must lie in [0, 1]");
      const double length = need(params.length, "--L");
      const double width = need(params.width, "--W");
      const auto grid = states::rect_sinc_grid(length, width, hbar);
      const auto rs = states::rect_sinc_state(grid, length, width, *params.mix, hbar);
      position = rs.state;
      momentum = states::fourier_transform(*position);
      add("P", *params.mix);
      add("L", length);
      add("W", width);
      add("normalisation", rs.normalisation);
      add("closed_form_normalisation", rs.closed_form_normalisation);
      add("position_mass_in_X", states::probability_in_interval(*position, -length / 2, length / 2));
      add("momentum_mass_in_band", states::probability_in_interval(*momentum, -width / 2, width / 2));
    } else if (kind == "gaussian") {
      const double sigma = need(params.sigma, "--sigma");
      // Equal resolution in units of sigma_x and sigma_p = hbar / (2 sigma).
      const double extent = 2.0 * sigma * std::sqrt(kPi * config.grid_points);
      const auto grid = states::Grid::symmetric(extent / 2, config.grid_points);
      position = states::gaussian_state(grid, sigma, hbar);
      momentum = states::fourier_transform(*position);
      add("sigma_x", sigma);
      add("sigma_p", hbar / (2.0 * sigma));
    } else {
      throw UsageError("unknown state kind '" + std::string(kind) + "'");
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const double hx = states::differential_entropy(*position);
  const double hp = states::differential_entropy(*momentum);
  add("entropy_x", hx);
  add("entropy_p", hp);
  add("entropy_sum", hx + hp);
  add("bbm_reference", bounds::bbm_reference(hbar));

  Table densities{{"x", "rho_x", "p", "rho_p"}, {}};
  const auto rx = position->density();
  const auto rp = momentum->density();
  for (int i = 0; i < position->grid().size(); ++i)
    densities.add_row({position->grid().point(i), rx[i], momentum->grid().point(i), rp[i]});
  return {std::move(*position), std::move(*momentum), std::move(summary), std::move(densities)};
}

}  // namespace confunc::cli
