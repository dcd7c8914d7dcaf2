#include "confunc/states.hpp"

#include "confunc/numerics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>
#include <random>

namespace confunc::states {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNormTolerance = 1e-8;
// Accumulated probability may fall short of 1 by rounding alone.
constexpr double kMassSlack = 1e-12;

// FFTW's planner is not re-entrant; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// In-place unnormalised DFT with the given FFTW sign.
void fft_in_place(std::vector<Complex>& data, int sign) {
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

double sum_density(std::span<const Complex> amplitudes) {
  double sum = 0.0;
  for (const auto& a : amplitudes) sum += std::norm(a);
  return sum;
}

void require_theta(double theta) {
  if (!(theta > 0.0 && theta <= 1.0))
    throw std::invalid_argument("confidence level must lie in (0, 1]");
}

// Cell masses rho_i dx and the total, with theta clamped against rounding.
double checked_theta(double theta, double total) {
  if (theta > total + kMassSlack)
    throw MassDeficit("requested confidence " + std::to_string(theta) +
                      " exceeds the state's total mass " + std::to_string(total));
  return std::min(theta, total);
}

// Smallest 2^a 3^b 5^c not below n.
int smooth_size(double n) {
  int best = std::numeric_limits<int>::max();
  for (long long p2 = 1; p2 < 2LL * best; p2 *= 2)
    for (long long p3 = p2; p3 < 2LL * best; p3 *= 3)
      for (long long p5 = p3; p5 < 2LL * best; p5 *= 5)
        if (static_cast<double>(p5) >= n && p5 < best) best = static_cast<int>(p5);
  return best;
}

}  // namespace

Grid::Grid(double x_min, double x_max, int n) : x_min_(x_min), x_max_(x_max), n_(n) {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && x_min < x_max))
    throw std::invalid_argument("grid requires finite x_min < x_max");
  if (n < 16) throw std::invalid_argument("grid requires at least 16 points");
}

Grid Grid::symmetric(double half_width, int n) { return Grid(-half_width, half_width, n); }

GriddedState::GriddedState(Grid grid, std::vector<Complex> amplitudes, double hbar,
                           Representation representation, std::optional<double> conjugate_min)
    : grid_(grid),
      amplitudes_(std::move(amplitudes)),
      hbar_(hbar),
      representation_(representation),
      conjugate_min_(0.0) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  if (static_cast<int>(amplitudes_.size()) != grid_.size())
    throw std::invalid_argument("amplitude count does not match the grid");
  const double norm = norm_squared();
  if (std::abs(norm - 1.0) > kNormTolerance)
    throw std::invalid_argument("state is not unit norm (norm^2 = " + std::to_string(norm) + ")");
  // Default conjugate grid is the symmetric one: -(n/2) * conjugate spacing.
  const double conjugate_spacing = 2.0 * kPi * hbar_ / (grid_.size() * grid_.spacing());
  conjugate_min_ = conjugate_min.value_or(-0.5 * grid_.size() * conjugate_spacing);
}

GriddedState GriddedState::normalised(Grid grid, std::vector<Complex> amplitudes, double hbar,
                                      Representation representation,
                                      std::optional<double> conjugate_min) {
  const double norm = sum_density(amplitudes) * grid.spacing();
  if (!(norm > 0.0)) throw std::invalid_argument("cannot normalise a zero state");
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amplitudes) a *= scale;
  return GriddedState(grid, std::move(amplitudes), hbar, representation, conjugate_min);
}

std::vector<double> GriddedState::density() const {
  std::vector<double> rho(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), rho.begin(),
                 [](const Complex& a) { return std::norm(a); });
  return rho;
}

double GriddedState::norm_squared() const { return sum_density(amplitudes_) * grid_.spacing(); }

Grid conjugate_grid(const Grid& grid, double hbar) {
  const double edge = kPi * hbar / grid.spacing();
  return Grid(-edge, edge, grid.size());
}

GriddedState fourier_transform(const GriddedState& state) {
  if (state.representation() != Representation::position)
    throw std::invalid_argument("fourier_transform expects a position-space state");
  const Grid& xg = state.grid();
  const Grid pg = conjugate_grid(xg, state.hbar());
  const int n = xg.size();
  const double hbar = state.hbar();
  const double dx = xg.spacing();
  const double dp = pg.spacing();
  const double x0 = xg.x_min();
  const double p0 = pg.x_min();

  // exp(-i p_k x_j / hbar) = exp(-i p0 x0/hbar) (-1)^j exp(-i k dp x0/hbar) exp(-2 pi i jk/n)
  // since p0 dx / hbar = -pi.
  std::vector<Complex> data(state.amplitudes().begin(), state.amplitudes().end());
  for (int j = 1; j < n; j += 2) data[j] = -data[j];
  fft_in_place(data, FFTW_FORWARD);
  const double scale = dx / std::sqrt(2.0 * kPi * hbar);
  for (int k = 0; k < n; ++k)
    data[k] *= scale * std::polar(1.0, -(p0 + k * dp) * x0 / hbar);
  return GriddedState(pg, std::move(data), hbar, Representation::momentum, x0);
}

GriddedState inverse_fourier_transform(const GriddedState& state) {
  if (state.representation() != Representation::momentum)
    throw std::invalid_argument("inverse_fourier_transform expects a momentum-space state");
  const Grid& pg = state.grid();
  const double hbar = state.hbar();
  const int n = pg.size();
  const double dp = pg.spacing();
  const double dx = 2.0 * kPi * hbar / (n * dp);
  const double x0 = state.conjugate_min();
  const double p0 = pg.x_min();
  const Grid xg(x0, x0 + n * dx, n);

  std::vector<Complex> data(state.amplitudes().begin(), state.amplitudes().end());
  for (int k = 0; k < n; ++k) data[k] *= std::polar(1.0, (p0 + k * dp) * x0 / hbar);
  fft_in_place(data, FFTW_BACKWARD);
  // exp(i p0 j dx / hbar) = exp(i pi j (p0 dx / (pi hbar))); exactly (-1)^j for
  // the symmetric momentum grid, kept general here.
  const double scale = dp / std::sqrt(2.0 * kPi * hbar);
  for (int j = 0; j < n; ++j) data[j] *= scale * std::polar(1.0, p0 * j * dx / hbar);
  return GriddedState(xg, std::move(data), hbar, Representation::position, p0);
}

double probability_in_interval(const GriddedState& state, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("probability_in_interval requires a < b");
  const Grid& g = state.grid();
  const double dx = g.spacing();
  const auto amps = state.amplitudes();
  // Cell i covers [lo + i dx, lo + (i+1) dx].
  const double lo = g.x_min() - 0.5 * dx;
  const int first = std::max(0, static_cast<int>(std::floor((a - lo) / dx)));
  const int last = std::min(g.size() - 1, static_cast<int>(std::floor((b - lo) / dx)));
  double mass = 0.0;
  for (int i = first; i <= last; ++i) {
    const double c0 = lo + i * dx;
    const double overlap = std::min(b, c0 + dx) - std::max(a, c0);
    if (overlap > 0.0) mass += std::norm(amps[i]) * overlap;
  }
  return std::clamp(mass, 0.0, 1.0);
}

ConfidenceEstimate confidence_uncertainty(const GriddedState& state, double theta) {
  require_theta(theta);
  const double dx = state.grid().spacing();
  const auto rho = state.density();
  std::vector<int> order(rho.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&rho](int a, int b) { return rho[a] > rho[b]; });

  double total = 0.0;
  for (double r : rho) total += r * dx;
  const double target = checked_theta(theta, total);

  double mass = 0.0;
  double measure = 0.0;
  for (int idx : order) {
    const double cell = rho[idx] * dx;
    if (mass + cell >= target) {
      // Only the part of the last cell needed to reach theta counts.
      measure += (target - mass) / rho[idx];
      return {theta, measure, SupportKind::measurable_set, std::nullopt, rho[idx]};
    }
    mass += cell;
    measure += dx;
  }
  return {theta, measure, SupportKind::measurable_set, std::nullopt, 0.0};
}

ConfidenceEstimate interval_confidence_uncertainty(const GriddedState& state, double theta) {
  require_theta(theta);
  const Grid& g = state.grid();
  const double dx = g.spacing();
  const int n = g.size();
  const auto rho = state.density();

  // Cumulative mass at cell boundaries b_j = lo + j dx; linear inside each cell.
  std::vector<double> cum(n + 1, 0.0);
  for (int i = 0; i < n; ++i) cum[i + 1] = cum[i] + rho[i] * dx;
  const double target = checked_theta(theta, cum[n]);
  const double lo = g.x_min() - 0.5 * dx;
  const auto boundary = [lo, dx](int j) { return lo + j * dx; };

  // Some optimal window has an endpoint on a cell boundary: sliding a window
  // whose ends both sit inside cells trades mass at the rate rho_b - rho_a.
  double best = std::numeric_limits<double>::infinity();
  Interval best_window{0.0, 0.0};

  // Left end on boundary i, right end at the first point reaching cum[i] + target.
  for (int i = 0, j = 0; i <= n; ++i) {
    const double need = cum[i] + target;
    if (need > cum[n]) break;
    j = std::max(j, i);
    while (j < n && cum[j] < need) ++j;
    double x2 = boundary(j);
    if (j > i && cum[j] > need) x2 = boundary(j - 1) + (need - cum[j - 1]) / rho[j - 1];
    if (x2 - boundary(i) < best) {
      best = x2 - boundary(i);
      best_window = {boundary(i), x2};
    }
  }
  // Right end on boundary j, left end at the last point with cum[j] - target left of it.
  for (int j = n, i = n; j >= 0; --j) {
    const double need = cum[j] - target;
    if (need < 0.0) break;
    i = std::min(i, j);
    while (i > 0 && cum[i] > need) --i;
    double x1 = boundary(i);
    if (i < j && cum[i] < need) x1 = boundary(i + 1) - (cum[i + 1] - need) / rho[i];
    if (boundary(j) - x1 < best) {
      best = boundary(j) - x1;
      best_window = {x1, boundary(j)};
    }
  }
  return {theta, best, SupportKind::single_interval, best_window, std::nullopt};
}

GriddedState gaussian_state(const Grid& grid, double sigma, double hbar, double centre) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_state: sigma must be positive");
  std::vector<Complex> amps(grid.size());
  const double norm = std::pow(2.0 * kPi * sigma * sigma, -0.25);
  for (int i = 0; i < grid.size(); ++i) {
    const double d = grid.point(i) - centre;
    amps[i] = norm * std::exp(-d * d / (4.0 * sigma * sigma));
  }
  return GriddedState::normalised(grid, std::move(amps), hbar);
}

Grid rect_sinc_grid(double length, double width, double hbar, int cells) {
  if (!(length > 0.0 && width > 0.0 && hbar > 0.0))
    throw std::invalid_argument("rect_sinc_grid: L, W and hbar must be positive");
  if (cells < 3) throw std::invalid_argument("rect_sinc_grid: need at least 3 cells per box");
  const double dx = length / cells;
  // dp = 2 pi hbar / (n dx) <= W / cells.
  const int n = std::max(16, smooth_size(2.0 * kPi * hbar * cells / (width * dx)));
  // Even n puts x = 0 on a grid point, so an odd cell count aligns the box edges.
  const int even_n = n % 2 == 0 ? n : smooth_size(n + 1.0);
  return Grid::symmetric(0.5 * even_n * dx, even_n);
}

RectSincState rect_sinc_state(const Grid& grid, double length, double width, double mix,
                              double hbar) {
  if (!(length > 0.0 && width > 0.0)) throw std::invalid_argument("rect_sinc_state: L, W > 0");
  if (!(mix >= 0.0 && mix <= 1.0)) throw std::invalid_argument("rect_sinc_state: P in [0, 1]");
  const int n = grid.size();
  const double dx = grid.spacing();
  const Grid pg = conjugate_grid(grid, hbar);
  if (grid.x_min() > -0.5 * length || grid.x_max() < 0.5 * length || pg.x_max() < 0.5 * width)
    throw std::invalid_argument("rect_sinc_state: grid does not contain the boxes");

  // Unit box on the cells lying entirely inside [-half, half] of a grid.
  const auto box = [n](const Grid& g, double half) {
    const double d = g.spacing();
    const double eps = 1e-9 * d;
    std::vector<Complex> amps(n, 0.0);
    int count = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(g.point(i)) + 0.5 * d <= half + eps) {
        amps[i] = 1.0;
        ++count;
      }
    }
    if (count < 3)
      throw std::invalid_argument("rect_sinc_state: box resolved by fewer than 3 cells");
    for (auto& a : amps) a /= std::sqrt(count * d);
    return amps;
  };

  const auto rect = box(grid, 0.5 * length);
  const GriddedState band(pg, box(pg, 0.5 * width), hbar, Representation::momentum,
                          grid.x_min());
  const GriddedState sinc = inverse_fourier_transform(band);

  std::vector<Complex> amps(n);
  const double a = std::sqrt(mix);
  const double b = std::sqrt(1.0 - mix);
  for (int i = 0; i < n; ++i) amps[i] = a * rect[i] + b * sinc.amplitudes()[i];
  const double norm2 = sum_density(amps) * dx;

  const double y = length * width / (4.0 * hbar);
  const double closed = std::sqrt(1.0 + 4.0 * std::sqrt(mix * (1.0 - mix) * 2.0 * hbar /
                                                        (kPi * length * width)) *
                                            numerics::sine_integral(y));
  return {GriddedState::normalised(grid, std::move(amps), hbar), std::sqrt(norm2), closed};
}

Grid slepian_grid(slepian::Concentration c, double length, double hbar, int n) {
  if (!(length > 0.0 && hbar > 0.0)) throw std::invalid_argument("slepian_grid: L, hbar > 0");
  if (!(c.value() > 0.0)) throw std::invalid_argument("slepian_grid: c must be positive");
  const int even_n = n + (n % 2);
  // Band cells = 2 c n / (pi * cells); balance the two.
  int cells = static_cast<int>(std::lround(std::sqrt(2.0 * c.value() * even_n / kPi)));
  cells = std::max(cells, 65);
  if (cells % 2 == 0) ++cells;
  if (cells > even_n / 2) throw std::invalid_argument("slepian_grid: too few grid points");
  const double dx = length / cells;
  return Grid::symmetric(0.5 * even_n * dx, even_n);
}

GriddedState slepian_state(slepian::Concentration c, double length, double hbar,
                           const Grid& grid, int order) {
  if (!(c.value() > 0.0)) throw std::invalid_argument("slepian_state: c must be positive");
  if (!(length > 0.0)) throw std::invalid_argument("slepian_state: L must be positive");
  const auto solution = slepian::principal_slepian(c, order);
  const double half = 0.5 * length;
  const double scale = std::sqrt(2.0 / length);
  std::vector<Complex> amps(grid.size(), 0.0);
  int inside = 0;
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.point(i);
    if (std::abs(x) < half) {
      amps[i] = scale * solution.evaluate(x / half);
      ++inside;
    }
  }
  if (inside < 64)
    throw std::invalid_argument("slepian_state: fewer than 64 cells inside [-L/2, L/2]");
  return GriddedState::normalised(grid, std::move(amps), hbar);
}

double differential_entropy(const GriddedState& state) {
  double h = 0.0;
  for (const auto& a : state.amplitudes()) {
    const double rho = std::norm(a);
    if (rho > 0.0) h -= rho * std::log(rho);
  }
  return h * state.grid().spacing();
}

LenardWitness verify_lenard(const GriddedState& position, Interval x_interval,
                            Interval p_interval, double slack) {
  return verify_lenard(position, fourier_transform(position), x_interval, p_interval, slack);
}

LenardWitness verify_lenard(const GriddedState& position, const GriddedState& momentum,
                            Interval x_interval, Interval p_interval, double slack) {
  LenardWitness w{};
  w.position_mass = probability_in_interval(position, x_interval.lo, x_interval.hi);
  w.momentum_mass = probability_in_interval(momentum, p_interval.lo, p_interval.hi);
  w.lambda0 = slepian::lambda0(
      slepian::Concentration::from_widths(x_interval.length(), p_interval.length(),
                                          position.hbar()));
  w.lhs = std::acos(std::sqrt(w.position_mass)) + std::acos(std::sqrt(w.momentum_mass));
  w.rhs = std::acos(std::sqrt(w.lambda0));
  w.slack = slack;
  w.holds = w.lhs >= w.rhs - slack;
  return w;
}

std::vector<GriddedState> random_corpus(const Grid& grid, int count, std::uint64_t seed,
                                        double hbar) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = grid.size();
  std::vector<GriddedState> corpus;
  corpus.reserve(count);
  for (int s = 0; s < count; ++s) {
    std::vector<Complex> raw(n);
    for (auto& z : raw) {
      const double re = normal(engine);
      const double im = normal(engine);
      z = {re, im};
    }
    std::vector<Complex> smooth(n);
    for (int i = 0; i < n; ++i) {
      Complex sum = 0.0;
      int terms = 0;
      for (int k = std::max(0, i - 2); k <= std::min(n - 1, i + 2); ++k, ++terms) sum += raw[k];
      smooth[i] = sum / static_cast<double>(terms);
    }
    corpus.push_back(GriddedState::normalised(grid, std::move(smooth), hbar));
  }
  return corpus;
}

}  // namespace confunc::states
