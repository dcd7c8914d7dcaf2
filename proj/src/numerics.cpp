#include "confunc/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace confunc::numerics {

namespace {

constexpr double kPi = std::numbers::pi;

// P_n(x) and P_n'(x) from the three-term recurrence.
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

void require_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("matrix is not symmetric");
}

// Beyond this argument Si switches to its asymptotic expansion; the number of
// sin(t)/t oscillations to integrate would otherwise grow without bound.
constexpr double kSiAsymptotic = 64.0;

double sine_integral_asymptotic(double y) {
  // Si(y) = pi/2 - f(y) cos y - g(y) sin y with
  // f ~ (1/y) sum (-1)^k (2k)!/y^{2k},  g ~ (1/y^2) sum (-1)^k (2k+1)!/y^{2k}.
  const double inv2 = 1.0 / (y * y);
  double f = 0.0;
  double g = 0.0;
  double tf = 1.0;
  double tg = 1.0;
  for (int k = 0; k < 30; ++k) {
    f += tf;
    g += tg;
    const double nf = -tf * (2.0 * k + 1.0) * (2.0 * k + 2.0) * inv2;
    const double ng = -tg * (2.0 * k + 2.0) * (2.0 * k + 3.0) * inv2;
    if (std::abs(nf) > std::abs(tf) || std::abs(nf) < 1e-18) break;
    tf = nf;
    tg = ng;
  }
  f /= y;
  g *= inv2;
  return kPi / 2.0 - f * std::cos(y) - g * std::sin(y);
}

}  // namespace

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size() || nodes_.size() < 2)
    throw std::invalid_argument("quadrature rule needs matching nodes/weights, order >= 2");
}

double QuadratureRule::integrate(const std::function<double(double)>& f, double a,
                                 double b) const {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
  return half * sum;
}

QuadratureRule gauss_legendre(int order) {
  if (order < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  const int n = order;
  std::vector<double> nodes(n);
  std::vector<double> weights(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi initial guess for the i-th largest root.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p = 0.0;
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[n - 1 - i] = x;
    nodes[i] = -x;
    weights[n - 1 - i] = w;
    weights[i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return QuadratureRule(std::move(nodes), std::move(weights));
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 15, rel_tol,
                                                                       &error);
}

double sine_integral(double y) {
  if (!std::isfinite(y)) throw std::invalid_argument("sine_integral: non-finite argument");
  if (y < 0.0) return -sine_integral(-y);
  if (y == 0.0) return 0.0;
  if (y >= kSiAsymptotic) return sine_integral_asymptotic(y);

  const auto sinc = [](double t) {
    if (std::abs(t) < 1e-4) {
      const double t2 = t * t;
      return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    return std::sin(t) / t;
  };
  // Panels of length pi/2 keep every Kronrod panel well inside one oscillation.
  const double panel = kPi / 2.0;
  double sum = 0.0;
  double lo = 0.0;
  while (lo < y) {
    const double hi = std::min(y, lo + panel);
    sum += integrate_adaptive(sinc, lo, hi, 1e-13);
    lo = hi;
  }
  return sum;
}

double erf_inverse(double theta) {
  if (!(theta >= 0.0 && theta < 1.0))
    throw std::invalid_argument("erf_inverse: theta must lie in [0, 1)");
  if (theta == 0.0) return 0.0;

  // Bracket [lo, hi] with erf(lo) <= theta <= erf(hi); erf(6) rounds to 1.
  double lo = 0.0;
  double hi = 6.0;
  // Initial guess from the Winitzki approximation.
  const double a = 0.147;
  const double l = std::log1p(-theta * theta);
  const double t = 2.0 / (kPi * a) + 0.5 * l;
  double x = std::sqrt(std::sqrt(t * t - l / a) - t);
  x = std::clamp(x, lo, hi);

  const double two_over_sqrt_pi = 2.0 / std::sqrt(kPi);
  for (int it = 0; it < 100; ++it) {
    // Residual in the complementary form keeps precision as theta -> 1.
    const double r = (1.0 - theta) - std::erfc(x);
    if (r > 0.0) {
      hi = std::min(hi, x);
    } else {
      lo = std::max(lo, x);
    }
    const double step = r / (two_over_sqrt_pi * std::exp(-x * x));
    double next = x + step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * std::max(1.0, x)) return next;
    x = next;
  }
  return bisect_monotone([](double v) { return std::erf(v); }, theta, lo, hi, 1e-15);
}

Eigenpair largest_eigenpair(const Eigen::MatrixXd& matrix, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("largest_eigenpair: tol must be positive");
  require_symmetric(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("largest_eigenpair: symmetric QR iteration did not converge");

  const Eigen::Index top = matrix.rows() - 1;
  Eigenpair result{solver.eigenvalues()(top), solver.eigenvectors().col(top)};
  result.vector.normalize();

  // One Rayleigh-quotient refinement step absorbs the rounding of the
  // tridiagonal back-transformation.
  Eigen::VectorXd mv = matrix * result.vector;
  result.value = result.vector.dot(mv);
  double residual = (mv - result.value * result.vector).norm();
  if (residual > tol) {
    for (int it = 0; it < 50 && residual > tol; ++it) {
      result.vector = mv.normalized();
      mv = matrix * result.vector;
      result.value = result.vector.dot(mv);
      residual = (mv - result.value * result.vector).norm();
    }
    if (residual > tol)
      throw ConvergenceError("largest_eigenpair: residual " + std::to_string(residual) +
                             " above tolerance");
  }

  Eigen::Index arg = 0;
  result.vector.cwiseAbs().maxCoeff(&arg);
  if (result.vector(arg) < 0.0) result.vector = -result.vector;
  return result;
}

double largest_eigenvalue(const Eigen::MatrixXd& matrix) {
  require_symmetric(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("largest_eigenvalue: symmetric QR iteration did not converge");
  return solver.eigenvalues()(matrix.rows() - 1);
}

double bisect_monotone(const std::function<double(double)>& f, double target, double lo,
                       double hi, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("bisect_monotone: tol must be positive");
  double flo = f(lo) - target;
  const double fhi = f(hi) - target;
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_monotone: bracket does not straddle target");

  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid) - target;
    if (std::abs(fm) <= tol || std::abs(hi - lo) <= tol || mid == lo || mid == hi) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double solve_monotone(const std::function<double(double)>& f, double target, double lo,
                      double hi, double f_tol, double x_tol) {
  double a = lo;
  double b = hi;
  double fa = f(a) - target;
  double fb = f(b) - target;
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw std::invalid_argument("solve_monotone: bracket does not straddle target");

  int side = 0;
  for (int it = 0; it < 500; ++it) {
    double x = (a * fb - b * fa) / (fb - fa);
    // Guard against a secant point collapsing onto an endpoint.
    if (!(x > std::min(a, b) && x < std::max(a, b))) x = 0.5 * (a + b);
    const double fx = f(x) - target;
    if (std::abs(fx) <= f_tol || std::abs(b - a) <= x_tol) return x;
    if ((fx > 0.0) == (fb > 0.0)) {
      b = x;
      fb = fx;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = x;
      fa = fx;
      if (side == 1) fb *= 0.5;
      side = 1;
    }
  }
  throw ConvergenceError("solve_monotone: iteration cap reached");
}

}  // namespace confunc::numerics
