#include "trialalloc/sample_size.hpp"

#include <algorithm>
#include <cmath>

#include "trialalloc/allocation.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/normal_dist.hpp"

namespace trialalloc {

namespace {

DesignSpec require_ni(const DesignSpec& spec) {
  DesignSpec valid = validate(spec);
  if (valid.trial_kind != TrialKind::noninferiority_two_arm) {
    throw ValidationError("trial_kind", "sample sizes are computed for two-arm non-inferiority designs");
  }
  return valid;
}

double gap_of(const DesignSpec& spec) {
  const TestContrast contrast = make_contrast(*spec.margin, spec.direction);
  const double g = contrast.mean(spec.control.location(), spec.treatment_arm().location());
  const double scale = std::max({1.0, std::fabs(spec.control.location()), std::fabs(spec.margin->value)});
  if (std::fabs(g) <= 1e-12 * scale) {
    throw DomainError("design gap is zero: the assumed effect sits on the null boundary");
  }
  if (g < 0.0) {
    throw DomainError("design gap is negative: the assumed effect lies inside the null region");
  }
  return g;
}

void check_fraction(double h) {
  if (!(std::isfinite(h) && h > 0.0 && h < 1.0)) {
    throw ValidationError("h", "allocation fraction must lie strictly in (0,1)");
  }
}

double total_n(const DesignSpec& spec, const ArmScales& scales, double h, double gap) {
  const double z = upper_quantile(spec.rates.alpha) + upper_quantile(1.0 - spec.rates.power);
  return z * z * statistic_variance(scales, h) / (gap * gap);
}

}  // namespace

double design_gap(const DesignSpec& spec) { return gap_of(require_ni(spec)); }

double exact_total_n(const DesignSpec& spec, double h) {
  const DesignSpec valid = require_ni(spec);
  check_fraction(h);
  const double gap = gap_of(valid);
  return total_n(valid, arm_scales(valid, power_point(valid)), h, gap);
}

SampleSizeResult sample_size_ni(const DesignSpec& spec, std::optional<double> h) {
  const DesignSpec valid = require_ni(spec);
  const double gap = gap_of(valid);
  const ArmScales scales = arm_scales(valid, power_point(valid));
  const double fraction = h.value_or(optimal_control_fraction(scales));
  check_fraction(fraction);

  const double n = total_n(valid, scales, fraction, gap);
  if (!std::isfinite(n) || n > 9.0e15) {
    throw DomainError("required sample size is not finite");
  }

  SampleSizeResult out;
  out.n_exact = n;
  out.n_control = static_cast<std::int64_t>(std::ceil(n * fraction));
  out.n_treatment = static_cast<std::int64_t>(std::ceil(n * (1.0 - fraction)));
  out.n_total = out.n_control + out.n_treatment;
  out.h_used = fraction;
  out.nominal_power = valid.rates.power;
  out.margin = *valid.margin;
  out.are_vs_balanced = are_versus_balanced(scales, fraction);
  return out;
}

double achieved_power(const DesignSpec& spec, std::int64_t n_control, std::int64_t n_treatment) {
  const DesignSpec valid = require_ni(spec);
  if (n_control < 1) throw ValidationError("n_control", "arm size must be positive");
  if (n_treatment < 1) throw ValidationError("n_treatment", "arm size must be positive");

  const ArmScales scales = arm_scales(valid, power_point(valid));
  const TestContrast contrast = make_contrast(*valid.margin, valid.direction);
  const double g = contrast.mean(valid.control.location(), valid.treatment_arm().location());
  const double se = std::sqrt(scales.control * scales.control / static_cast<double>(n_control) +
                              scales.treatment * scales.treatment / static_cast<double>(n_treatment));
  return normal_cdf(g / se - upper_quantile(valid.rates.alpha));
}

}  // namespace trialalloc
