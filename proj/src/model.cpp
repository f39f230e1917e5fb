#include "trialalloc/model.hpp"

#include <cmath>
#include <string>

#include "trialalloc/errors.hpp"

namespace trialalloc {

namespace {

std::string join(std::string_view path, std::string_view leaf) {
  std::string out(path);
  out += '.';
  out += leaf;
  return out;
}

bool strictly_inside_unit(double x) { return std::isfinite(x) && x > 0.0 && x < 1.0; }

}  // namespace

OutcomeFamily OutcomeFamily::normal(double mean, double sd) {
  OutcomeFamily f;
  f.tag = Family::normal;
  f.mean = mean;
  f.sd = sd;
  return f;
}

OutcomeFamily OutcomeFamily::binomial(double pi) {
  OutcomeFamily f;
  f.tag = Family::binomial;
  f.pi = pi;
  return f;
}

OutcomeFamily OutcomeFamily::poisson(double lambda) {
  OutcomeFamily f;
  f.tag = Family::poisson;
  f.lambda = lambda;
  return f;
}

double OutcomeFamily::location() const noexcept {
  switch (tag) {
    case Family::normal: return mean;
    case Family::binomial: return pi;
    case Family::poisson: return lambda;
  }
  return mean;
}

OutcomeFamily OutcomeFamily::with_location(double value) const noexcept {
  OutcomeFamily f = *this;
  switch (tag) {
    case Family::normal: f.mean = value; break;
    case Family::binomial: f.pi = value; break;
    case Family::poisson: f.lambda = value; break;
  }
  return f;
}

void validate_family(const OutcomeFamily& family, std::string_view path) {
  switch (family.tag) {
    case Family::normal:
      if (!std::isfinite(family.mean)) {
        throw ValidationError(join(path, "mean"), "mean must be finite");
      }
      if (!(std::isfinite(family.sd) && family.sd > 0.0)) {
        throw ValidationError(join(path, "sd"), "standard deviation must be positive");
      }
      break;
    case Family::binomial:
      if (!strictly_inside_unit(family.pi)) {
        throw ValidationError(join(path, "pi"), "probability must lie strictly in (0,1)");
      }
      break;
    case Family::poisson:
      if (!(std::isfinite(family.lambda) && family.lambda > 0.0)) {
        throw ValidationError(join(path, "lambda"), "rate must be positive");
      }
      break;
  }
}

void validate_margin(const Margin& margin, ValidateOptions options, std::string_view path) {
  const std::string value_path = join(path, "value");
  if (!std::isfinite(margin.value)) {
    throw ValidationError(value_path, "margin must be finite");
  }
  if (margin.kind == MarginKind::additive) {
    if (!(margin.value > 0.0)) {
      throw ValidationError(value_path, "additive margin requires Δ > 0");
    }
    return;
  }
  if (options.strict_ni) {
    if (!(margin.value > 1.0)) {
      throw ValidationError(value_path, "multiplicative margin requires Δ > 1 in strict NI mode");
    }
  } else if (!(margin.value >= 1.0)) {
    throw ValidationError(value_path, "multiplicative margin requires Δ ≥ 1");
  }
}

void validate_rates(const ErrorRates& rates, std::string_view path) {
  if (!(std::isfinite(rates.alpha) && rates.alpha > 0.0 && rates.alpha < 0.5)) {
    throw ValidationError(join(path, "alpha"), "alpha must lie strictly in (0,0.5)");
  }
  if (!(std::isfinite(rates.power) && rates.power > 0.5 && rates.power < 1.0)) {
    throw ValidationError(join(path, "power"), "power must lie strictly in (0.5,1)");
  }
}

DesignSpec validate(const DesignSpec& spec, ValidateOptions options) {
  validate_family(spec.control, "control");
  validate_rates(spec.rates);

  if (spec.trial_kind == TrialKind::noninferiority_two_arm) {
    if (spec.treatment.size() != 1) {
      throw ValidationError("treatment", "non-inferiority designs have exactly two arms");
    }
    const OutcomeFamily& arm = spec.treatment.front();
    if (arm.tag != spec.control.tag) {
      throw ValidationError("treatment.tag", "treatment family must match the control family");
    }
    validate_family(arm, "treatment");
    if (!spec.margin) {
      throw ValidationError("margin", "non-inferiority designs require a margin");
    }
    validate_margin(*spec.margin, options);
    if (spec.margin->kind == MarginKind::multiplicative && spec.control.tag == Family::normal) {
      // Ratio hypotheses are linearised as mu_C - delta*mu_T, valid for positive means.
      if (!(spec.control.mean > 0.0)) {
        throw ValidationError("control.mean", "multiplicative margin requires a positive mean");
      }
      if (!(arm.mean > 0.0)) {
        throw ValidationError("treatment.mean", "multiplicative margin requires a positive mean");
      }
    }
    return spec;
  }

  if (spec.treatment.empty()) {
    throw ValidationError("treatment", "superiority designs need at least one experimental arm");
  }
  for (std::size_t i = 0; i < spec.treatment.size(); ++i) {
    const std::string path = "treatment[" + std::to_string(i) + "]";
    if (spec.treatment[i].tag != spec.control.tag) {
      throw ValidationError(path + ".tag", "treatment family must match the control family");
    }
    validate_family(spec.treatment[i], path);
  }
  if (spec.margin) {
    validate_margin(*spec.margin, options);
  }
  return spec;
}

OutcomeFamily null_boundary(const OutcomeFamily& control, const Margin& margin, Direction direction) {
  validate_family(control, "control");
  validate_margin(margin);

  const double c = control.location();
  const bool higher = direction == Direction::higher_favorable;
  double boundary = c;
  if (margin.kind == MarginKind::additive) {
    boundary = higher ? c - margin.value : c + margin.value;
  } else {
    boundary = higher ? c / margin.value : c * margin.value;
  }

  OutcomeFamily out = control.with_location(boundary);
  switch (out.tag) {
    case Family::normal:
      break;
    case Family::binomial:
      if (!strictly_inside_unit(boundary)) {
        throw DomainError("null-boundary treatment probability " + std::to_string(boundary) +
                          " leaves (0,1)");
      }
      break;
    case Family::poisson:
      if (!(boundary > 0.0)) {
        throw DomainError("null-boundary treatment rate " + std::to_string(boundary) +
                          " is not positive");
      }
      break;
  }
  return out;
}

double stddev(const OutcomeFamily& family) {
  switch (family.tag) {
    case Family::normal: return family.sd;
    case Family::binomial: return std::sqrt(family.pi * (1.0 - family.pi));
    case Family::poisson: return std::sqrt(family.lambda);
  }
  return family.sd;
}

OutcomeFamily treatment_at(const DesignSpec& spec, ParameterPoint point) {
  const OutcomeFamily& arm = spec.treatment_arm();
  if (point == ParameterPoint::alternative) {
    return arm;
  }
  if (!spec.margin) {
    throw ValidationError("margin", "non-inferiority designs require a margin");
  }
  OutcomeFamily boundary = null_boundary(spec.control, *spec.margin, spec.direction);
  if (boundary.tag == Family::normal) {
    boundary.sd = arm.sd;
  }
  return boundary;
}

TestContrast make_contrast(const Margin& margin, Direction direction) noexcept {
  const bool higher = direction == Direction::higher_favorable;
  if (margin.kind == MarginKind::additive) {
    return higher ? TestContrast{1.0, -1.0, margin.value} : TestContrast{-1.0, 1.0, margin.value};
  }
  return higher ? TestContrast{margin.value, -1.0, 0.0} : TestContrast{-1.0, margin.value, 0.0};
}

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::normal: return "normal";
    case Family::binomial: return "binomial";
    case Family::poisson: return "poisson";
  }
  return "normal";
}

std::string_view to_string(MarginKind k) noexcept {
  return k == MarginKind::additive ? "additive" : "multiplicative";
}

std::string_view to_string(Direction d) noexcept {
  return d == Direction::higher_favorable ? "higher_favorable" : "lower_favorable";
}

std::string_view to_string(TrialKind k) noexcept {
  return k == TrialKind::noninferiority_two_arm ? "noninferiority_two_arm" : "superiority_multiarm";
}

std::string_view to_string(ParameterPoint p) noexcept {
  return p == ParameterPoint::null_boundary ? "null_boundary" : "alternative";
}

}  // namespace trialalloc
