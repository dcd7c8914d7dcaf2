#pragma once

#include "confunc/slepian.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace confunc::states {

using Complex = std::complex<double>;

/// Uniform grid of n cells on [x_min, x_max). Point i sits at x_min + i*dx and
/// represents the cell [x_i - dx/2, x_i + dx/2].
class Grid {
 public:
  Grid(double x_min, double x_max, int n);

  /// [-half_width, half_width) with n points.
  static Grid symmetric(double half_width, int n);

  [[nodiscard]] double x_min() const { return x_min_; }
  [[nodiscard]] double x_max() const { return x_max_; }
  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] double spacing() const { return (x_max_ - x_min_) / n_; }
  [[nodiscard]] double point(int i) const { return x_min_ + i * spacing(); }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double x_min_;
  double x_max_;
  int n_;
};

struct Interval {
  double lo;
  double hi;
  [[nodiscard]] double length() const { return hi - lo; }
};

enum class Representation { position, momentum };

/// Thrown when a state's accumulated probability cannot meet a requested
/// confidence level.
class MassDeficit : public std::runtime_error {
 public:
  explicit MassDeficit(const std::string& what) : std::runtime_error(what) {}
};

/// Unit-norm wave function on a grid, in either representation.
///
/// A momentum-space state remembers the start of the position grid it came
/// from (conjugate_min) so the inverse transform lands on the same points.
class GriddedState {
 public:
  /// Throws std::invalid_argument unless sum |psi|^2 dx = 1 to 1e-8.
  GriddedState(Grid grid, std::vector<Complex> amplitudes, double hbar,
               Representation representation = Representation::position,
               std::optional<double> conjugate_min = std::nullopt);

  /// Rescales arbitrary non-zero amplitudes to unit norm first.
  static GriddedState normalised(Grid grid, std::vector<Complex> amplitudes, double hbar,
                                 Representation representation = Representation::position,
                                 std::optional<double> conjugate_min = std::nullopt);

  [[nodiscard]] const Grid& grid() const { return grid_; }
  [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }
  [[nodiscard]] double hbar() const { return hbar_; }
  [[nodiscard]] Representation representation() const { return representation_; }
  /// First point of the conjugate grid; symmetric about zero unless set.
  [[nodiscard]] double conjugate_min() const { return conjugate_min_; }

  /// |psi_i|^2 at each grid point.
  [[nodiscard]] std::vector<double> density() const;
  [[nodiscard]] double norm_squared() const;

 private:
  Grid grid_;
  std::vector<Complex> amplitudes_;
  double hbar_;
  Representation representation_;
  double conjugate_min_;
};

/// Momentum grid [-pi hbar/dx, pi hbar/dx) paired with a position grid.
[[nodiscard]] Grid conjugate_grid(const Grid& grid, double hbar);

/// phi(p) = (2 pi hbar)^{-1/2} int exp(-i p x / hbar) psi(x) dx on the grid
/// p in [-pi hbar/dx, pi hbar/dx). Exactly unitary in the discrete norm.
[[nodiscard]] GriddedState fourier_transform(const GriddedState& state);

/// Inverse of fourier_transform.
[[nodiscard]] GriddedState inverse_fourier_transform(const GriddedState& state);

/// Probability in [a, b] with the density piecewise constant over cells.
[[nodiscard]] double probability_in_interval(const GriddedState& state, double a, double b);

enum class SupportKind { measurable_set, single_interval };

struct ConfidenceEstimate {
  double theta;
  double measure;
  SupportKind support_kind;
  /// Achieving window for single_interval.
  std::optional<Interval> support;
  /// Lowest density included, for measurable_set.
  std::optional<double> density_threshold;
};

/// Smallest measure of a set holding probability theta (superlevel set of the
/// piecewise-constant density). Requires 0 < theta <= 1.
[[nodiscard]] ConfidenceEstimate confidence_uncertainty(const GriddedState& state, double theta);

/// Shortest single interval holding probability theta. Requires 0 < theta <= 1.
[[nodiscard]] ConfidenceEstimate interval_confidence_uncertainty(const GriddedState& state,
                                                                 double theta);

/// Minimum-uncertainty Gaussian with position spread sigma, centred at `centre`.
[[nodiscard]] GriddedState gaussian_state(const Grid& grid, double sigma, double hbar,
                                          double centre = 0.0);

struct RectSincState {
  GriddedState state;
  /// C from numerical quadrature of |sqrt(P) psi_rect + sqrt(1-P) psi_sinc|^2.
  double normalisation;
  /// C from the closed form with Si(L W / 4 hbar), for comparison only.
  double closed_form_normalisation;
};

/// Grid on which a width-L box and a width-W momentum band are both resolved by
/// at least `cells` cells. The box edges fall on cell boundaries when cells is odd.
[[nodiscard]] Grid rect_sinc_grid(double length, double width, double hbar, int cells = 9);

/// Superposition sqrt(P) psi_rect + sqrt(1-P) psi_sinc, normalised. psi_rect is
/// the unit box of width L on the cells inside [-L/2, L/2]; psi_sinc is the
/// inverse transform of the unit box on the momentum cells inside [-W/2, W/2].
/// Throws std::invalid_argument if the grid resolves either box with fewer than
/// three cells or cannot contain it.
[[nodiscard]] RectSincState rect_sinc_state(const Grid& grid, double length, double width,
                                            double mix, double hbar);

/// Even-n grid with [-L/2, L/2] spanning an odd number (>= 65) of whole cells,
/// balancing position and momentum resolution for concentration c.
[[nodiscard]] Grid slepian_grid(slepian::Concentration c, double length, double hbar, int n);

/// Principal Slepian function stretched onto [-L/2, L/2], zero outside. The
/// implied band is W = 4 hbar c / L. Requires >= 64 cell centres inside.
[[nodiscard]] GriddedState slepian_state(slepian::Concentration c, double length, double hbar,
                                         const Grid& grid, int order = slepian::kDefaultOrder);

/// -int rho ln rho over the grid, with 0 ln 0 = 0.
[[nodiscard]] double differential_entropy(const GriddedState& state);

struct LenardWitness {
  double position_mass;
  double momentum_mass;
  double lambda0;
  double lhs;  // arccos sqrt(position_mass) + arccos sqrt(momentum_mass)
  double rhs;  // arccos sqrt(lambda0(|X||P| / 4 hbar))
  double slack;
  bool holds;  // lhs >= rhs - slack
};

/// Evaluates both sides of the projection-angle inequality for the intervals.
[[nodiscard]] LenardWitness verify_lenard(const GriddedState& position, Interval x_interval,
                                          Interval p_interval, double slack = 1e-6);

/// Same, with the momentum representation already computed.
[[nodiscard]] LenardWitness verify_lenard(const GriddedState& position,
                                          const GriddedState& momentum, Interval x_interval,
                                          Interval p_interval, double slack = 1e-6);

/// Seeded corpus: complex standard normal amplitude per cell, 5-cell moving
/// average, normalised.
[[nodiscard]] std::vector<GriddedState> random_corpus(const Grid& grid, int count,
                                                      std::uint64_t seed, double hbar = 1.0);

}  // namespace confunc::states
