#pragma once

#include "confunc/numerics.hpp"

#include <Eigen/Dense>

#include <vector>

namespace confunc::slepian {

inline constexpr int kDefaultOrder = 400;
inline constexpr int kDefaultTruncation = 64;

/// Dimensionless time-bandwidth product c = L W / (4 hbar).
class Concentration {
 public:
  /// Throws std::invalid_argument unless c is finite and non-negative.
  explicit Concentration(double c);

  /// c for a position interval of length `length` and a momentum band of width `width`.
  static Concentration from_widths(double length, double width, double hbar);

  [[nodiscard]] double value() const { return c_; }

  friend auto operator<=>(const Concentration&, const Concentration&) = default;

 private:
  double c_;
};

/// Principal eigenpair of the sinc kernel on [-1, 1].
struct ProlateSolution {
  Concentration c;
  double lambda0;
  /// psi_0 sampled at the quadrature nodes; unit L2 norm under the weights,
  /// even, positive at the midpoint.
  std::vector<double> principal_function;
  numerics::QuadratureRule rule;

  [[nodiscard]] int quadrature_order() const { return rule.order(); }

  /// Nystrom interpolant of psi_0 at u in [-1, 1].
  [[nodiscard]] double evaluate(double u) const;
};

/// M_ij = sqrt(w_i w_j) sin(c(u_i - u_j)) / (pi (u_i - u_j)), with c/pi on the diagonal.
[[nodiscard]] Eigen::MatrixXd kernel_matrix(Concentration c, const numerics::QuadratureRule& rule);

/// Largest eigenvalue of the sinc kernel, in [0, 1).
///
/// Evaluated on the reflection-even block of the discretised kernel, which
/// carries the principal eigenvalue at half the matrix size.
[[nodiscard]] double lambda0(Concentration c, int order = kDefaultOrder);

/// 1 - lambda0(c), evaluated with the same discretisation.
[[nodiscard]] double one_minus_lambda0(Concentration c, int order = kDefaultOrder);

/// c with lambda0(c) = theta. Throws std::invalid_argument outside (0, 1).
[[nodiscard]] Concentration lambda0_inverse(double theta, int order = kDefaultOrder);

/// Batch inverse for many targets: Chebyshev interpolant of -ln(1 - lambda0(c))
/// on [0, c_max], refined until it matches direct evaluation at every added
/// node to 1e-10. Targets above the tabulated range use lambda0_inverse.
class Lambda0InverseTable {
 public:
  /// Tabulates up to lambda0_inverse(theta_max), capped at c = 8.
  explicit Lambda0InverseTable(double theta_max, int order = kDefaultOrder);

  [[nodiscard]] Concentration operator()(double theta) const;
  [[nodiscard]] double c_max() const { return c_max_; }
  [[nodiscard]] int nodes() const { return static_cast<int>(values_.size()); }

 private:
  [[nodiscard]] double interpolate(double c) const;

  int order_;
  double c_max_;
  double h_max_;
  std::vector<double> values_;
};

/// 2c/pi, the c -> 0 form.
[[nodiscard]] double lambda0_small_c(Concentration c);
/// 1 - 4 sqrt(pi c) exp(-2c), the c -> infinity form.
[[nodiscard]] double lambda0_large_c(Concentration c);

/// Fourier-series matrix of the band probability for a function confined to an
/// interval of length L, with indices -truncation..truncation and
/// band parameter lw_over_hbar = L W / hbar. Its operator norm over pi equals
/// lambda0(L W / (4 hbar)).
[[nodiscard]] Eigen::MatrixXd a_matrix(double lw_over_hbar, int truncation = kDefaultTruncation);

/// ||A|| / pi for the Fourier-series route.
[[nodiscard]] double a_matrix_lambda0(Concentration c, int truncation = kDefaultTruncation);

/// Principal eigenvalue and eigenfunction at concentration c > 0.
[[nodiscard]] ProlateSolution principal_slepian(Concentration c, int order = kDefaultOrder);

}  // namespace confunc::slepian
