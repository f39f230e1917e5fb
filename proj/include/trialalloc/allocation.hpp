#pragma once

#include <span>
#include <vector>

#include "trialalloc/model.hpp"

namespace trialalloc {

/// Optimal fractions for k-1 experimental arms each compared with a shared
/// control (arm 1). `fractions[0]` is the control.
struct SuperiorityAllocation {
  std::vector<double> fractions;
  double are_vs_balanced = 1.0;

  int arms() const noexcept { return static_cast<int>(fractions.size()); }
};

/// Common variance: control c = 1/2 for k = 2, (sqrt(k-1) - 1)/(k-2) otherwise;
/// every other arm gets (1-c)/(k-1).
SuperiorityAllocation superiority_equal_variance(int k);

/// Arm-specific sd's sigma_1 (control) .. sigma_k:
///   c_1 = sigma_1 sqrt(k-1) / S,  c_i = sigma_i / S,  S = sigma_1 sqrt(k-1) + sum_{i>=2} sigma_i.
SuperiorityAllocation superiority_unequal_variance(std::span<const double> sigmas);

/// Optimal control fraction h for a two-arm NI test on X_C - w X_T
/// (w = 1 additive, w = delta multiplicative): h = sigma_C / (sigma_C + w sigma_T).
double ni_optimal_fraction(const Margin& margin, double sigma_c, double sigma_t);

/// Variance at balanced allocation over variance at the optimal h:
/// 2(sigma_C^2 + w^2 sigma_T^2) / (sigma_C + w sigma_T)^2.
double ni_are(const Margin& margin, double sigma_c, double sigma_t);

/// Standard deviations of the two arm means' contributions to the NI
/// statistic, i.e. |coef| * sd for each arm (see TestContrast). The statistic
/// variance at control fraction h is proportional to
///   control^2 / h + treatment^2 / (1 - h).
struct ArmScales {
  double control = 1.0;
  double treatment = 1.0;
};

ArmScales arm_scales(const DesignSpec& spec, ParameterPoint point);

/// Statistic variance per unit total sample size at control fraction h.
double statistic_variance(const ArmScales& scales, double h);
double optimal_control_fraction(const ArmScales& scales);
/// V(1/2) / V(h).
double are_versus_balanced(const ArmScales& scales, double h);

/// Optimal control fraction for a two-arm NI spec, composing stddev() of each
/// arm (treatment taken per variance_eval_point, default null boundary) with
/// the two-arm rule. For higher-favorable designs this is exactly
/// ni_optimal_fraction(margin, stddev(control), stddev(treatment)).
double ni_optimal_fraction_glm(const DesignSpec& spec);

/// AllocationPlan for any valid spec (NI two-arm or multi-arm superiority).
AllocationPlan allocate(const DesignSpec& spec);

/// Default parameter point used when the spec does not pin one.
inline ParameterPoint allocation_point(const DesignSpec& spec) {
  return spec.variance_eval_point.value_or(ParameterPoint::null_boundary);
}

}  // namespace trialalloc
