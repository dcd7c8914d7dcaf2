#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace confunc::numerics {

/// Raised when an iterative kernel does not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauss-Legendre rule on [-1, 1]. Nodes ascending, symmetric about zero.
class QuadratureRule {
 public:
  QuadratureRule(std::vector<double> nodes, std::vector<double> weights);

  [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] int order() const { return static_cast<int>(nodes_.size()); }

  /// Integral of f over [a, b] after the affine map from [-1, 1].
  [[nodiscard]] double integrate(const std::function<double(double)>& f, double a = -1.0,
                                 double b = 1.0) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// N-point Gauss-Legendre rule by Newton iteration on the three-term recurrence.
/// Throws std::invalid_argument for order < 2.
[[nodiscard]] QuadratureRule gauss_legendre(int order);

/// Adaptive 15-point Gauss-Kronrod integration of f over [a, b]; rel_tol is
/// relative to the L1 norm of f on the interval.
[[nodiscard]] double integrate_adaptive(const std::function<double(double)>& f, double a,
                                        double b, double rel_tol = 1e-14);

/// Si(y) = int_0^y sin(t)/t dt.
[[nodiscard]] double sine_integral(double y);

/// Inverse of erf on [0, 1). Throws std::invalid_argument outside that range.
[[nodiscard]] double erf_inverse(double theta);

struct Eigenpair {
  double value;
  Eigen::VectorXd vector;
};

/// Dominant (largest algebraic) eigenpair of a real symmetric matrix.
///
/// The returned vector has unit norm and its entry of largest magnitude is
/// positive. Throws std::invalid_argument for non-symmetric input (1e-12) and
/// ConvergenceError when the residual |Mv - lv| exceeds tol.
[[nodiscard]] Eigenpair largest_eigenpair(const Eigen::MatrixXd& matrix, double tol = 1e-12);

/// Largest eigenvalue only; same symmetry contract as largest_eigenpair.
[[nodiscard]] double largest_eigenvalue(const Eigen::MatrixXd& matrix);

/// Bisection for a monotone f on [lo, hi] with f(lo), f(hi) straddling target.
///
/// Returns x with |f(x) - target| <= tol or once the bracket is narrower than
/// tol. Works for increasing and decreasing f. Throws std::invalid_argument if
/// the bracket does not straddle the target.
[[nodiscard]] double bisect_monotone(const std::function<double(double)>& f, double target,
                                     double lo, double hi, double tol = 1e-12);

/// Bracketed root of f(x) = target by the Illinois variant of regula falsi.
///
/// Same contract as bisect_monotone; converges superlinearly when f is close to
/// linear on the bracket and falls back to bisection steps otherwise.
[[nodiscard]] double solve_monotone(const std::function<double(double)>& f, double target,
                                    double lo, double hi, double f_tol, double x_tol);

}  // namespace confunc::numerics
