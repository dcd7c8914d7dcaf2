#include "doctest.h"

#include "confunc/bounds.hpp"

#include <cmath>
#include <numbers>

using namespace confunc::bounds;
using doctest::Approx;

namespace {

std::vector<double> axis99() {
  std::vector<double> axis;
  for (int i = 1; i <= 99; ++i) axis.push_back(i / 100.0);
  return axis;
}

}  // namespace

TEST_CASE("ConfidencePair validation") {
  CHECK_THROWS_AS(ConfidencePair(1.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ConfidencePair(0.5, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(ConfidencePair(std::nan(""), 0.5), std::invalid_argument);
  const ConfidencePair p(0.2, 0.7);
  CHECK(p.swapped().theta_x() == 0.7);
}

TEST_CASE("region classification") {
  CHECK(classify_region({0.3, 0.3}) == Region::trivial);
  CHECK(classify_region({0.5, 0.5}) == Region::trivial);
  CHECK(classify_region({0.5, 0.51}) == Region::bounded);
  CHECK(to_string(Region::bounded) == "bounded");
  CHECK(lp_interval_bound({0.3, 0.3}) == 0.0);
  CHECK(lp_measurable_bound({0.3, 0.3}) == 0.0);
}

TEST_CASE("interval bound at tabulated pairs") {
  // 4 c with lambda0(c) = T, from an independent dense eigen-solve and root find.
  const std::tuple<double, double, double> reference[] = {
      {0.6, 0.6, 0.25144},  {0.7, 0.7, 1.01247},   {0.8, 0.8, 2.34885},
      {0.9, 0.9, 4.62261},  {0.95, 0.95, 6.67866}, {0.99, 0.99, 10.8243},
      {0.99, 0.5, 2.63850}, {0.95, 0.7, 3.23830},  {1.0, 0.95, 10.2540}};
  for (auto [tx, tp, value] : reference) CHECK(lp_interval_bound({tx, tp}) == Approx(value).epsilon(2e-5));
}

TEST_CASE("hbar scaling") {
  CHECK(lp_interval_bound({0.9, 0.9}, 2.0) == Approx(2.0 * lp_interval_bound({0.9, 0.9})));
  CHECK(lp_measurable_bound({0.9, 0.9}, 0.5) == Approx(0.5 * lp_measurable_bound({0.9, 0.9})));
  CHECK_THROWS_AS((void)lp_measurable_bound({0.9, 0.9}, 0.0), std::invalid_argument);
}

TEST_CASE("spot values of the measurable-set and Donoho-Stark bounds") {
  // 2 pi 0.64 and 2 pi (1 - 2 sqrt(0.1))^2.
  CHECK(lp_measurable_bound({0.9, 0.9}) == Approx(2 * std::numbers::pi * 0.64));
  const double s = 1.0 - 2.0 * std::sqrt(0.1);
  CHECK(donoho_stark_bound({0.9, 0.9}) == Approx(2 * std::numbers::pi * s * s));
  CHECK(donoho_stark_bound({0.6, 0.6}) == 0.0);
}

TEST_CASE("divergence at the corner") {
  CHECK_THROWS_AS((void)lp_interval_bound({1.0, 1.0}), DivergentBound);
  CHECK_THROWS_AS((void)report({1.0, 1.0}), DivergentBound);
  CHECK(lp_measurable_bound({1.0, 1.0}) == Approx(2 * std::numbers::pi));
}

TEST_CASE("logarithmic asymptote") {
  CHECK(log_asymptote(0.9) == Approx(-2.0 * std::log(0.1)));
  // The ratio drifts slowly toward 1 as theta_p -> 1.
  const double r3 = lp_interval_bound({1.0, 1.0 - 1e-3}) / log_asymptote(1.0 - 1e-3);
  const double r9 = lp_interval_bound({1.0, 1.0 - 1e-9}) / log_asymptote(1.0 - 1e-9);
  CHECK(r9 < r3);
  CHECK(r9 > 1.0);
  CHECK_THROWS_AS((void)log_asymptote(1.0), std::invalid_argument);
}

TEST_CASE("elementary bound") {
  CHECK_FALSE(elementary_bound({0.5, 0.9}).has_value());
  CHECK(*elementary_bound({0.95, 0.95}) == Approx(1.73858).epsilon(1e-5));
  CHECK(*elementary_bound({1.0, 0.8}) == Approx(std::numbers::pi * 0.8));
}

TEST_CASE("elementary floor and interval bound meet on theta_x = 1") {
  // At theta_x = 1 the operator-norm floor pi theta_p is attained: the A matrix
  // at LW/hbar = lp_interval_bound has norm pi theta_p.
  for (double tp : {0.5, 0.8, 0.95}) {
    const double lw = lp_interval_bound({1.0, tp});
    const double norm = confunc::numerics::largest_eigenvalue(confunc::slepian::a_matrix(lw));
    CHECK(norm == Approx(*elementary_bound({1.0, tp})).epsilon(1e-6));
  }
}

TEST_CASE("gaussian products") {
  const double v = confunc::numerics::erf_inverse(0.9);
  CHECK(gaussian_interval_product(0.9) == Approx(4 * v * v));
  CHECK(gaussian_interval_product(0.9) == Approx(5.41109).epsilon(1e-5));
  CHECK_FALSE(gaussian_interval_product(ConfidencePair{1.0, 0.5}).has_value());
  CHECK(*gaussian_interval_product(ConfidencePair{0.9, 0.9}) == Approx(gaussian_interval_product(0.9)));
  CHECK(bbm_reference() == Approx(std::log(std::numbers::pi * std::numbers::e)));
}

TEST_CASE("report collects every evaluator") {
  const auto r = report({0.9, 0.9});
  CHECK(r.region == Region::bounded);
  CHECK(r.angular_target == Approx(0.64));
  CHECK(r.lp_interval == Approx(4.62261).epsilon(2e-5));
  CHECK(r.elementary.has_value());
  CHECK(r.gaussian_product.has_value());
  const auto t = report({0.2, 0.3});
  CHECK(t.region == Region::trivial);
  CHECK(t.lp_interval == 0.0);
}

TEST_CASE("dominance, ordering and symmetry on the 99x99 grid") {
  const auto axis = axis99();
  for (double tx : axis) {
    for (double tp : axis) {
      const ConfidencePair p(tx, tp);
      const double lpm = lp_measurable_bound(p);
      const double ds = donoho_stark_bound(p);
      CHECK(lpm >= ds);
      if (tx + tp > 1.0 + 1e-9) CHECK(lpm > ds);
      CHECK(lpm == lp_measurable_bound(p.swapped()));
      CHECK(ds == donoho_stark_bound(p.swapped()));
      CHECK(angular_target(p) == angular_target(p.swapped()));
    }
  }
}

TEST_CASE("interval bound dominates the measurable-set bound") {
  // 4 lambda0^{-1}(T) >= 2 pi T, equivalently lambda0(c) <= 2c/pi.
  for (double tx = 0.05; tx < 1.0; tx += 0.05)
    for (double tp = 1.0 - tx + 0.01; tp < 1.0; tp += 0.07)
      CHECK(lp_interval_bound({tx, tp}) >= lp_measurable_bound({tx, tp}));
}

TEST_CASE("monotonicity in each argument") {
  for (double fixed : {0.3, 0.6, 0.9, 1.0}) {
    double prev_m = 0.0, prev_i = 0.0, prev_d = 0.0;
    for (double t = 0.01; t < 0.995; t += 0.02) {
      const ConfidencePair p(fixed, t);
      const double m = lp_measurable_bound(p);
      const double i = lp_interval_bound(p);
      const double d = donoho_stark_bound(p);
      CHECK(m >= prev_m);
      CHECK(i >= prev_i);
      CHECK(d >= prev_d);
      prev_m = m;
      prev_i = i;
      prev_d = d;
    }
  }
}

TEST_CASE("measurable-set bound vanishes continuously at the region boundary") {
  for (double tx : {0.2, 0.5, 0.8}) {
    double prev = lp_measurable_bound({tx, 1.0 - tx + 1e-2});
    for (double eps : {1e-3, 1e-4, 1e-5, 1e-6}) {
      const double v = lp_measurable_bound({tx, 1.0 - tx + eps});
      CHECK(v < prev);
      prev = v;
    }
    CHECK(prev < 1e-9);
  }
}
