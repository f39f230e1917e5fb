#pragma once

#include <cstdint>
#include <optional>

#include "trialalloc/model.hpp"

namespace trialalloc {

struct SampleSizeResult {
  std::int64_t n_control = 0;
  std::int64_t n_treatment = 0;
  std::int64_t n_total = 0;
  double h_used = 0.5;
  double nominal_power = 0.9;
  Margin margin;
  double are_vs_balanced = 1.0;
  /// Real-valued total before per-arm ceiling.
  double n_exact = 0.0;
};

/// Parameter point for power and sample-size variances when the spec does not pin one.
inline ParameterPoint power_point(const DesignSpec& spec) {
  return spec.variance_eval_point.value_or(ParameterPoint::alternative);
}

/// Two-sample normal-approximation design:
///   N = (z_{1-alpha} + z_{1-beta})^2 * (a_C^2/h + a_T^2/(1-h)) / g^2
/// where a_C, a_T are the arm scales of the NI statistic and g its mean at the
/// alternative (see TestContrast). Arms are ceil(N h) and ceil(N (1-h)).
/// With no `h`, the optimal fraction for the same variances is used.
SampleSizeResult sample_size_ni(const DesignSpec& spec, std::optional<double> h = std::nullopt);

/// Real-valued total N at control fraction h, before rounding.
double exact_total_n(const DesignSpec& spec, double h);

/// Mean of the NI statistic at the alternative; positive inside H_A.
double design_gap(const DesignSpec& spec);

/// Phi(g / sqrt(a_C^2/n_C + a_T^2/n_T) - z_{1-alpha}).
double achieved_power(const DesignSpec& spec, std::int64_t n_control, std::int64_t n_treatment);

}  // namespace trialalloc
