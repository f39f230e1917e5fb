#include "trialalloc/allocation.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "trialalloc/errors.hpp"

namespace trialalloc {

namespace {

void check_sigma(double sigma, const char* name) {
  if (!(std::isfinite(sigma) && sigma > 0.0)) {
    throw ValidationError(name, "standard deviation must be positive");
  }
}

double margin_weight(const Margin& margin) {
  return margin.kind == MarginKind::multiplicative ? margin.value : 1.0;
}

}  // namespace

SuperiorityAllocation superiority_equal_variance(int k) {
  if (k < 2) throw ValidationError("k", "at least two arms are required");

  const double km1 = static_cast<double>(k - 1);
  const double root = std::sqrt(km1);
  // (k-2) denominator is 0/0 at k = 2; the limit is 1/2.
  const double c = k == 2 ? 0.5 : (root - 1.0) / static_cast<double>(k - 2);

  SuperiorityAllocation out;
  out.fractions.assign(static_cast<std::size_t>(k), (1.0 - c) / km1);
  out.fractions[0] = c;
  out.are_vs_balanced = 2.0 * k * km1 / ((root + km1) * (root + km1));
  return out;
}

SuperiorityAllocation superiority_unequal_variance(std::span<const double> sigmas) {
  const int k = static_cast<int>(sigmas.size());
  if (k < 2) throw ValidationError("sigmas", "at least two arms are required");
  for (int i = 0; i < k; ++i) {
    if (!(std::isfinite(sigmas[i]) && sigmas[i] > 0.0)) {
      throw ValidationError("sigmas[" + std::to_string(i) + "]", "standard deviation must be positive");
    }
  }

  const double km1 = static_cast<double>(k - 1);
  const double control_term = sigmas[0] * std::sqrt(km1);
  const double rest = std::accumulate(sigmas.begin() + 1, sigmas.end(), 0.0);
  const double rest_sq = std::accumulate(sigmas.begin() + 1, sigmas.end(), 0.0,
                                         [](double acc, double s) { return acc + s * s; });
  const double total = control_term + rest;

  SuperiorityAllocation out;
  out.fractions.resize(static_cast<std::size_t>(k));
  out.fractions[0] = control_term / total;
  for (int i = 1; i < k; ++i) out.fractions[i] = sigmas[i] / total;
  out.are_vs_balanced = (k * km1 * sigmas[0] * sigmas[0] + k * rest_sq) / (total * total);
  return out;
}

double ni_optimal_fraction(const Margin& margin, double sigma_c, double sigma_t) {
  validate_margin(margin);
  check_sigma(sigma_c, "sigma_c");
  check_sigma(sigma_t, "sigma_t");
  return sigma_c / (sigma_c + margin_weight(margin) * sigma_t);
}

double ni_are(const Margin& margin, double sigma_c, double sigma_t) {
  validate_margin(margin);
  check_sigma(sigma_c, "sigma_c");
  check_sigma(sigma_t, "sigma_t");
  const double wt = margin_weight(margin) * sigma_t;
  const double sum = sigma_c + wt;
  return 2.0 * (sigma_c * sigma_c + wt * wt) / (sum * sum);
}

ArmScales arm_scales(const DesignSpec& spec, ParameterPoint point) {
  if (spec.trial_kind != TrialKind::noninferiority_two_arm || !spec.margin) {
    throw ValidationError("trial_kind", "a two-arm non-inferiority design is required");
  }
  const TestContrast contrast = make_contrast(*spec.margin, spec.direction);
  const OutcomeFamily treatment = treatment_at(spec, point);
  return ArmScales{std::fabs(contrast.control_coef) * stddev(spec.control),
                   std::fabs(contrast.treatment_coef) * stddev(treatment)};
}

double statistic_variance(const ArmScales& scales, double h) {
  return scales.control * scales.control / h + scales.treatment * scales.treatment / (1.0 - h);
}

double optimal_control_fraction(const ArmScales& scales) {
  return scales.control / (scales.control + scales.treatment);
}

double are_versus_balanced(const ArmScales& scales, double h) {
  return statistic_variance(scales, 0.5) / statistic_variance(scales, h);
}

double ni_optimal_fraction_glm(const DesignSpec& spec) {
  const DesignSpec valid = validate(spec);
  return optimal_control_fraction(arm_scales(valid, allocation_point(valid)));
}

AllocationPlan allocate(const DesignSpec& spec) {
  const DesignSpec valid = validate(spec);
  AllocationPlan plan;

  if (valid.trial_kind == TrialKind::noninferiority_two_arm) {
    const ArmScales scales = arm_scales(valid, allocation_point(valid));
    const double h = optimal_control_fraction(scales);
    const double sum = scales.control + scales.treatment;
    plan.control_fraction = h;
    plan.fractions = {h, 1.0 - h};
    plan.ratio_treatment_to_control = (1.0 - h) / h;
    plan.are_vs_balanced = 2.0 * (scales.control * scales.control + scales.treatment * scales.treatment) /
                           (sum * sum);
    return plan;
  }

  std::vector<double> sigmas;
  sigmas.reserve(valid.treatment.size() + 1);
  sigmas.push_back(stddev(valid.control));
  for (const auto& arm : valid.treatment) sigmas.push_back(stddev(arm));
  const SuperiorityAllocation sup = superiority_unequal_variance(sigmas);

  const double c1 = sup.fractions[0];
  plan.fractions = sup.fractions;
  plan.control_fraction = c1;
  plan.ratio_treatment_to_control = (1.0 - c1) / (static_cast<double>(sup.arms() - 1) * c1);
  plan.are_vs_balanced = sup.are_vs_balanced;
  return plan;
}

}  // namespace trialalloc
