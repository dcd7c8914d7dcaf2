#include "doctest.h"

#include "confunc/numerics.hpp"

#include <cmath>
#include <numbers>

using namespace confunc::numerics;
using doctest::Approx;

namespace {

// Maclaurin series; an independent check on the quadrature route.
double si_series(double x) {
  double term = x;
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += term / (2 * k + 1);
    term *= -x * x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

}  // namespace

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  for (int n : {2, 5, 17, 64, 400}) {
    const auto rule = gauss_legendre(n);
    double total = 0.0;
    for (double w : rule.weights()) total += w;
    CHECK(total == Approx(2.0).epsilon(1e-14));
    const int deg = 2 * n - 2;  // even, so the integral over [-1, 1] is non-zero
    const double exact = 2.0 / (deg + 1);
    if (deg <= 60) CHECK(rule.integrate([deg](double x) { return std::pow(x, deg); }) ==
                         Approx(exact).epsilon(1e-13));
    for (std::size_t i = 0; i + 1 < rule.nodes().size(); ++i)
      CHECK(rule.nodes()[i] < rule.nodes()[i + 1]);
  }
}

TEST_CASE("gauss_legendre three-point rule") {
  const auto rule = gauss_legendre(3);
  CHECK(rule.nodes()[0] == Approx(-std::sqrt(0.6)).epsilon(1e-15));
  CHECK(rule.nodes()[1] == Approx(0.0));
  CHECK(rule.weights()[1] == Approx(8.0 / 9.0).epsilon(1e-15));
  CHECK(rule.weights()[0] == Approx(5.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("gauss_legendre rejects order below two") {
  CHECK_THROWS_AS((void)gauss_legendre(1), std::invalid_argument);
}

TEST_CASE("integrate_adaptive on oscillatory and smooth integrands") {
  CHECK(integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        Approx(std::numbers::e - 1.0).epsilon(1e-13));
  CHECK(integrate_adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0) ==
        Approx(std::sin(40.0) / 40.0).epsilon(1e-11));
  CHECK(integrate_adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("sine_integral against series and reference values") {
  // Reference values from mpmath.si.
  CHECK(sine_integral(std::numbers::pi) == Approx(1.85193705198247).epsilon(1e-13));
  CHECK(sine_integral(100.0) == Approx(1.56222546688906).epsilon(1e-13));
  CHECK(sine_integral(64.5) == Approx(1.57206364453928).epsilon(1e-13));
  CHECK(sine_integral(0.0025) == Approx(0.00249999913194461).epsilon(1e-14));
  for (double x : {0.1, 0.7, 1.0, 2.5, 5.0, 9.0}) CHECK(sine_integral(x) == Approx(si_series(x)).epsilon(1e-12));
  CHECK(sine_integral(0.0) == 0.0);
  CHECK(sine_integral(-2.0) == Approx(-sine_integral(2.0)));
  // Continuity across the switch to the asymptotic expansion.
  CHECK(sine_integral(64.0 - 1e-12) == Approx(sine_integral(64.0 + 1e-12)).epsilon(1e-13));
  CHECK_THROWS_AS((void)sine_integral(std::nan("")), std::invalid_argument);
}

TEST_CASE("erf_inverse") {
  CHECK(erf_inverse(0.5) == Approx(0.47693627620447).epsilon(1e-13));
  CHECK(erf_inverse(0.999999) == Approx(3.4589107372755).epsilon(1e-12));
  CHECK(erf_inverse(0.0) == 0.0);
  for (double t = 0.01; t < 1.0; t += 0.0137) CHECK(std::erf(erf_inverse(t)) == Approx(t).epsilon(1e-14));
  double prev = 0.0;
  for (double t = 0.05; t < 1.0; t += 0.05) {
    const double v = erf_inverse(t);
    CHECK(v > prev);
    prev = v;
  }
  CHECK_THROWS_AS((void)erf_inverse(1.0), std::invalid_argument);
  CHECK_THROWS_AS((void)erf_inverse(-0.1), std::invalid_argument);
}

TEST_CASE("largest_eigenpair on a matrix with known spectrum") {
  // Q diag(3, 1, -2) Q^T with a rotation Q.
  const double a = 0.3;
  Eigen::Matrix3d q;
  q << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  const Eigen::Matrix3d m = q * Eigen::Vector3d(3.0, 1.0, -2.0).asDiagonal() * q.transpose();
  const auto pair = largest_eigenpair(m);
  CHECK(pair.value == Approx(3.0).epsilon(1e-14));
  CHECK((m * pair.vector - pair.value * pair.vector).norm() < 1e-12);
  CHECK(pair.vector.norm() == Approx(1.0));
  CHECK(pair.vector.cwiseAbs().maxCoeff() == Approx(pair.vector.maxCoeff()));
  CHECK(largest_eigenvalue(m) == Approx(3.0).epsilon(1e-14));
}

TEST_CASE("largest_eigenpair rejects non-symmetric input") {
  Eigen::Matrix2d m;
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS((void)largest_eigenpair(m), std::invalid_argument);
}

TEST_CASE("monotone root finders") {
  const auto cube = [](double x) { return x * x * x; };
  CHECK(bisect_monotone(cube, 8.0, 0.0, 5.0) == Approx(2.0).epsilon(1e-11));
  CHECK(solve_monotone(cube, 8.0, 0.0, 5.0, 1e-14, 1e-14) == Approx(2.0).epsilon(1e-12));
  const auto decreasing = [](double x) { return std::exp(-x); };
  CHECK(solve_monotone(decreasing, 0.25, 0.0, 10.0, 1e-15, 1e-14) ==
        Approx(std::log(4.0)).epsilon(1e-12));
  CHECK_THROWS_AS((void)bisect_monotone(cube, 200.0, 0.0, 5.0), std::invalid_argument);
  CHECK_THROWS_AS((void)solve_monotone(cube, -1.0, 0.0, 5.0, 1e-12, 1e-12), std::invalid_argument);
}
