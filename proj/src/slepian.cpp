#include "confunc/slepian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace confunc::slepian {

namespace {

constexpr double kPi = std::numbers::pi;

// Past this c, 1 - lambda0 < 1e-30 and lambda0 rounds to 1 in double precision.
constexpr double kSaturatedC = 40.0;

const double kBelowOne = std::nextafter(1.0, 0.0);

// sin(c x) / (pi x) with its limit c/pi at x = 0.
double sinc_kernel(double c, double x) {
  const double cx = c * x;
  if (std::abs(cx) < 1e-5) return c / kPi * (1.0 - cx * cx / 6.0);
  return std::sin(cx) / (kPi * x);
}

// sin(x/2) / x with its limit 1/2 at x = 0.
double half_sinc(double x) {
  if (std::abs(x) < 1e-5) return 0.5 * (1.0 - x * x / 24.0);
  return std::sin(0.5 * x) / x;
}

// Kernel matrix restricted to reflection-even vectors. Nodes pair as
// i <-> n-1-i; an odd rule's middle node (u = 0) forms its own basis vector.
Eigen::MatrixXd even_block(double c, const numerics::QuadratureRule& rule) {
  const auto u = rule.nodes();
  const auto w = rule.weights();
  const int n = rule.order();
  const int half = n / 2;
  const bool odd = n % 2 == 1;
  const int size = half + (odd ? 1 : 0);
  Eigen::MatrixXd m(size, size);
  // Basis index k maps to node n-1-k for k < half, and to the middle node otherwise.
  for (int a = 0; a < half; ++a) {
    const int i = n - 1 - a;
    for (int b = a; b < half; ++b) {
      const int j = n - 1 - b;
      const double v = std::sqrt(w[i] * w[j]) *
                       (sinc_kernel(c, u[i] - u[j]) + sinc_kernel(c, u[i] + u[j]));
      m(a, b) = v;
      m(b, a) = v;
    }
  }
  if (odd) {
    const int mid = n / 2;
    for (int a = 0; a < half; ++a) {
      const int i = n - 1 - a;
      const double v = std::sqrt(2.0 * w[i] * w[mid]) * sinc_kernel(c, u[i]);
      m(a, half) = v;
      m(half, a) = v;
    }
    m(half, half) = w[mid] * c / kPi;
  }
  return m;
}

}  // namespace

Concentration::Concentration(double c) : c_(c) {
  if (!(std::isfinite(c) && c >= 0.0))
    throw std::invalid_argument("concentration parameter must be finite and >= 0");
}

Concentration Concentration::from_widths(double length, double width, double hbar) {
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be positive");
  return Concentration(length * width / (4.0 * hbar));
}

double ProlateSolution::evaluate(double u) const {
  const auto nodes = rule.nodes();
  const auto weights = rule.weights();
  double sum = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j)
    sum += weights[j] * sinc_kernel(c.value(), u - nodes[j]) * principal_function[j];
  return sum / lambda0;
}

Eigen::MatrixXd kernel_matrix(Concentration c, const numerics::QuadratureRule& rule) {
  const auto u = rule.nodes();
  const auto w = rule.weights();
  const int n = rule.order();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = w[i] * c.value() / kPi;
    for (int j = i + 1; j < n; ++j) {
      const double v = std::sqrt(w[i] * w[j]) * sinc_kernel(c.value(), u[i] - u[j]);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

double lambda0(Concentration c, int order) {
  if (c.value() == 0.0) return 0.0;
  if (c.value() >= kSaturatedC) return kBelowOne;
  const auto rule = numerics::gauss_legendre(order);
  const double value = numerics::largest_eigenvalue(even_block(c.value(), rule));
  return std::clamp(value, 0.0, kBelowOne);
}

double one_minus_lambda0(Concentration c, int order) { return 1.0 - lambda0(c, order); }

Concentration lambda0_inverse(double theta, int order) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("lambda0_inverse: theta must lie in (0, 1)");

  // Work with h(c) = -ln(1 - lambda0(c)), which is close to linear in c at
  // both ends: ~2c/pi for small c and ~2c for large c.
  const auto h = [order](double c) { return -std::log(one_minus_lambda0(Concentration(c), order)); };
  const double target = -std::log1p(-theta);

  const double small = kPi * theta / 2.0;
  const double large = -0.5 * std::log1p(-theta);
  double lo = std::min(small, large) / 4.0;
  double hi = 4.0 * std::max(small, large);
  while (h(lo) > target) lo /= 4.0;
  while (h(hi) < target) hi *= 4.0;

  // |lambda0 - theta| = (1 - theta) |dh| to first order.
  const double f_tol = 1e-13 / (1.0 - theta);
  const double root = numerics::solve_monotone(h, target, lo, hi, f_tol, 1e-13 * hi);
  return Concentration(root);
}

namespace {

constexpr double kTableMaxC = 8.0;
constexpr double kTableTol = 1e-10;

double h_exact(double c, int order) {
  return c == 0.0 ? 0.0 : -std::log(one_minus_lambda0(Concentration(c), order));
}

// Chebyshev-Lobatto node k of n intervals on [0, c_max].
double lobatto(int k, int n, double c_max) { return 0.5 * c_max * (1.0 - std::cos(kPi * k / n)); }

}  // namespace

Lambda0InverseTable::Lambda0InverseTable(double theta_max, int order) : order_(order) {
  if (!(theta_max > 0.0 && theta_max < 1.0))
    throw std::invalid_argument("Lambda0InverseTable: theta_max must lie in (0, 1)");
  c_max_ = std::min(kTableMaxC, 1.05 * lambda0_inverse(theta_max, order).value());

  int n = 16;
  values_.resize(n + 1);
  for (int k = 0; k <= n; ++k) values_[k] = h_exact(lobatto(k, n, c_max_), order);
  while (true) {
    // Doubling keeps the old nodes; the new ones double as the accuracy check.
    std::vector<double> refined(2 * n + 1);
    double worst = 0.0;
    for (int k = 0; k <= 2 * n; ++k) {
      if (k % 2 == 0) {
        refined[k] = values_[k / 2];
        continue;
      }
      const double c = lobatto(k, 2 * n, c_max_);
      refined[k] = h_exact(c, order);
      worst = std::max(worst, std::abs(refined[k] - interpolate(c)));
    }
    values_ = std::move(refined);
    n *= 2;
    if (worst <= kTableTol) break;
    if (n >= 512) throw numerics::ConvergenceError("Lambda0InverseTable: interpolant did not converge");
  }
  h_max_ = values_.back();
}

double Lambda0InverseTable::interpolate(double c) const {
  // Barycentric form with weights (-1)^k, halved at both ends.
  const int n = static_cast<int>(values_.size()) - 1;
  double num = 0.0;
  double den = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double diff = c - lobatto(k, n, c_max_);
    if (diff == 0.0) return values_[k];
    double w = (k % 2 == 0 ? 1.0 : -1.0) / diff;
    if (k == 0 || k == n) w *= 0.5;
    num += w * values_[k];
    den += w;
  }
  return num / den;
}

Concentration Lambda0InverseTable::operator()(double theta) const {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("Lambda0InverseTable: theta must lie in (0, 1)");
  const double target = -std::log1p(-theta);
  if (target >= h_max_) return lambda0_inverse(theta, order_);
  const auto h = [this](double c) { return interpolate(c); };
  return Concentration(
      numerics::solve_monotone(h, target, 0.0, c_max_, 1e-15 * std::max(1.0, target), 1e-15 * c_max_));
}

double lambda0_small_c(Concentration c) { return 2.0 * c.value() / kPi; }

double lambda0_large_c(Concentration c) {
  return 1.0 - 4.0 * std::sqrt(kPi * c.value()) * std::exp(-2.0 * c.value());
}

Eigen::MatrixXd a_matrix(double lw_over_hbar, int truncation) {
  if (!(lw_over_hbar > 0.0)) throw std::invalid_argument("a_matrix: LW/hbar must be positive");
  if (truncation < 1) throw std::invalid_argument("a_matrix: truncation must be >= 1");

  const double edge = lw_over_hbar / 2.0;
  // Panel boundaries: the interval ends plus every t = 2k pi inside it.
  std::vector<double> cuts{-edge};
  for (int k = static_cast<int>(std::ceil(-edge / (2.0 * kPi))); 2.0 * kPi * k < edge; ++k)
    if (2.0 * kPi * k > -edge) cuts.push_back(2.0 * kPi * k);
  cuts.push_back(edge);

  const int size = 2 * truncation + 1;
  Eigen::MatrixXd a(size, size);
  for (int row = 0; row < size; ++row) {
    const double tm = 2.0 * kPi * (row - truncation);
    for (int col = row; col < size; ++col) {
      const double tn = 2.0 * kPi * (col - truncation);
      // (-1)^{m+n} (1 - cos t) / ((t - 2n pi)(t - 2m pi)) rewritten with
      // 1 - cos t = 2 sin((t - 2n pi)/2) sin((t - 2m pi)/2) (-1)^{m+n}; both
      // removable singularities become the finite limits of half_sinc.
      const auto integrand = [tm, tn](double t) { return 2.0 * half_sinc(t - tm) * half_sinc(t - tn); };
      double sum = 0.0;
      for (std::size_t p = 0; p + 1 < cuts.size(); ++p)
        sum += numerics::integrate_adaptive(integrand, cuts[p], cuts[p + 1], 1e-13);
      a(row, col) = sum;
      a(col, row) = sum;
    }
  }
  return a;
}

double a_matrix_lambda0(Concentration c, int truncation) {
  if (c.value() == 0.0) return 0.0;
  return numerics::largest_eigenvalue(a_matrix(4.0 * c.value(), truncation)) / kPi;
}

ProlateSolution principal_slepian(Concentration c, int order) {
  if (!(c.value() > 0.0)) throw std::invalid_argument("principal_slepian: c must be positive");
  auto rule = numerics::gauss_legendre(order);
  const auto pair = numerics::largest_eigenpair(kernel_matrix(c, rule));
  const auto w = rule.weights();
  std::vector<double> psi(rule.order());
  for (int i = 0; i < rule.order(); ++i) psi[i] = pair.vector(i) / std::sqrt(w[i]);

  ProlateSolution solution{c, std::clamp(pair.value, 0.0, kBelowOne), std::move(psi),
                           std::move(rule)};
  if (solution.evaluate(0.0) < 0.0)
    for (double& v : solution.principal_function) v = -v;
  return solution;
}

}  // namespace confunc::slepian
