#pragma once

#include "confunc/slepian.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace confunc::bounds {

/// Raised for the interval bound at theta_x = theta_p = 1, where no finite
/// value exists (a state cannot be compactly supported in both representations).
class DivergentBound : public std::domain_error {
 public:
  explicit DivergentBound(const std::string& what) : std::domain_error(what) {}
};

/// (theta_x, theta_p), each in [0, 1].
class ConfidencePair {
 public:
  ConfidencePair(double theta_x, double theta_p);

  [[nodiscard]] double theta_x() const { return theta_x_; }
  [[nodiscard]] double theta_p() const { return theta_p_; }
  [[nodiscard]] ConfidencePair swapped() const { return {theta_p_, theta_x_}; }

 private:
  double theta_x_;
  double theta_p_;
};

enum class Region { trivial, bounded };

[[nodiscard]] std::string_view to_string(Region region);

/// trivial iff theta_x + theta_p <= 1.
[[nodiscard]] Region classify_region(ConfidencePair pair);

/// (sqrt(tx tp) - sqrt((1-tx)(1-tp)))^2 in the bounded region, 0 otherwise.
[[nodiscard]] double angular_target(ConfidencePair pair);

/// Measurable-set bound 2 pi hbar T; 0 in the trivial region.
[[nodiscard]] double lp_measurable_bound(ConfidencePair pair, double hbar = 1.0);

/// Interval bound 4 hbar lambda0^{-1}(T); 0 in the trivial region.
/// Throws DivergentBound when T = 1.
[[nodiscard]] double lp_interval_bound(ConfidencePair pair, double hbar = 1.0,
                                       int order = slepian::kDefaultOrder);

/// -2 hbar ln(1 - theta_p), the theta_p -> 1 form of the interval bound at theta_x = 1.
[[nodiscard]] double log_asymptote(double theta_p, double hbar = 1.0);

/// 2 pi hbar max(0, 1 - sqrt(1-tx) - sqrt(1-tp))^2.
[[nodiscard]] double donoho_stark_bound(ConfidencePair pair, double hbar = 1.0);

/// Lower bound on ||A|| valid when 2 tx + tp > 2; empty elsewhere.
[[nodiscard]] std::optional<double> elementary_bound(ConfidencePair pair);

/// 4 hbar erfinv(theta)^2: interval product of a minimum-uncertainty Gaussian
/// at equal confidences.
[[nodiscard]] double gaussian_interval_product(double theta, double hbar = 1.0);

/// 4 hbar erfinv(tx) erfinv(tp); empty when either confidence is 1.
[[nodiscard]] std::optional<double> gaussian_interval_product(ConfidencePair pair,
                                                              double hbar = 1.0);

/// ln(pi e hbar), the entropic floor for h(x) + h(p).
[[nodiscard]] double bbm_reference(double hbar = 1.0);

struct BoundReport {
  ConfidencePair pair;
  Region region;
  double angular_target;
  double lp_measurable;
  double lp_interval;
  double donoho_stark;
  std::optional<double> elementary;
  std::optional<double> gaussian_product;
};

/// Every evaluator at one pair. Throws DivergentBound at (1, 1).
[[nodiscard]] BoundReport report(ConfidencePair pair, double hbar = 1.0,
                                 int order = slepian::kDefaultOrder);

}  // namespace confunc::bounds
