#include "confunc/bounds.hpp"

#include "confunc/numerics.hpp"

#include <cmath>
#include <numbers>

namespace confunc::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

void require_hbar(double hbar) {
  if (!(hbar > 0.0 && std::isfinite(hbar))) throw std::invalid_argument("hbar must be positive");
}

}  // namespace

ConfidencePair::ConfidencePair(double theta_x, double theta_p)
    : theta_x_(theta_x), theta_p_(theta_p) {
  if (!(theta_x >= 0.0 && theta_x <= 1.0 && theta_p >= 0.0 && theta_p <= 1.0))
    throw std::invalid_argument("confidence levels must lie in [0, 1]");
}

std::string_view to_string(Region region) {
  return region == Region::trivial ? "trivial" : "bounded";
}

Region classify_region(ConfidencePair pair) {
  return pair.theta_x() + pair.theta_p() <= 1.0 ? Region::trivial : Region::bounded;
}

double angular_target(ConfidencePair pair) {
  if (classify_region(pair) == Region::trivial) return 0.0;
  const double tx = pair.theta_x();
  const double tp = pair.theta_p();
  const double cosine = std::sqrt(tx * tp) - std::sqrt((1.0 - tx) * (1.0 - tp));
  return cosine > 0.0 ? cosine * cosine : 0.0;
}

double lp_measurable_bound(ConfidencePair pair, double hbar) {
  require_hbar(hbar);
  return 2.0 * kPi * hbar * angular_target(pair);
}

double lp_interval_bound(ConfidencePair pair, double hbar, int order) {
  require_hbar(hbar);
  const double t = angular_target(pair);
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) throw DivergentBound("interval bound diverges at theta_x = theta_p = 1");
  return 4.0 * hbar * slepian::lambda0_inverse(t, order).value();
}

double log_asymptote(double theta_p, double hbar) {
  require_hbar(hbar);
  if (!(theta_p > 0.0 && theta_p < 1.0))
    throw std::invalid_argument("log_asymptote: theta_p must lie in (0, 1)");
  return -2.0 * hbar * std::log1p(-theta_p);
}

double donoho_stark_bound(ConfidencePair pair, double hbar) {
  require_hbar(hbar);
  const double s = 1.0 - (std::sqrt(1.0 - pair.theta_x()) + std::sqrt(1.0 - pair.theta_p()));
  return s > 0.0 ? 2.0 * kPi * hbar * s * s : 0.0;
}

std::optional<double> elementary_bound(ConfidencePair pair) {
  const double tx = pair.theta_x();
  const double tp = pair.theta_p();
  if (!(2.0 * tx + tp > 2.0)) return std::nullopt;
  return kPi / tx * (tp - 2.0 * std::sqrt((tx + tp - 1.0) * (1.0 - tx)));
}

double gaussian_interval_product(double theta, double hbar) {
  require_hbar(hbar);
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("gaussian_interval_product: theta must lie in (0, 1)");
  const double v = numerics::erf_inverse(theta);
  return 4.0 * hbar * v * v;
}

std::optional<double> gaussian_interval_product(ConfidencePair pair, double hbar) {
  require_hbar(hbar);
  if (pair.theta_x() >= 1.0 || pair.theta_p() >= 1.0) return std::nullopt;
  return 4.0 * hbar * numerics::erf_inverse(pair.theta_x()) * numerics::erf_inverse(pair.theta_p());
}

double bbm_reference(double hbar) {
  require_hbar(hbar);
  return std::log(kPi * std::numbers::e * hbar);
}

BoundReport report(ConfidencePair pair, double hbar, int order) {
  return BoundReport{
      .pair = pair,
      .region = classify_region(pair),
      .angular_target = angular_target(pair),
      .lp_measurable = lp_measurable_bound(pair, hbar),
      .lp_interval = lp_interval_bound(pair, hbar, order),
      .donoho_stark = donoho_stark_bound(pair, hbar),
      .elementary = elementary_bound(pair),
      .gaussian_product = gaussian_interval_product(pair, hbar),
  };
}

}  // namespace confunc::bounds
