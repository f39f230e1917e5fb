#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace trialalloc {

enum class Family { normal, binomial, poisson };
enum class MarginKind { additive, multiplicative };
enum class Direction { higher_favorable, lower_favorable };
enum class TrialKind { superiority_multiarm, noninferiority_two_arm };

/// A point in parameter space at which arm variances (or simulated truth) are
/// taken: the null boundary of the NI hypothesis, or the assumed alternative.
enum class ParameterPoint { null_boundary, alternative };

/// Outcome distribution of one arm. Only the fields belonging to `tag` are
/// meaningful: normal uses mean/sd, binomial uses pi, poisson uses lambda.
struct OutcomeFamily {
  Family tag = Family::normal;
  double mean = 0.0;
  double sd = 1.0;
  double pi = 0.5;
  double lambda = 1.0;

  static OutcomeFamily normal(double mean, double sd);
  static OutcomeFamily binomial(double pi);
  static OutcomeFamily poisson(double lambda);

  /// Mean of one observation (mu, pi or lambda).
  double location() const noexcept;
  /// Copy with the mean of one observation replaced; sd is kept for normal.
  OutcomeFamily with_location(double value) const noexcept;

  friend bool operator==(const OutcomeFamily&, const OutcomeFamily&) = default;
};

struct Margin {
  MarginKind kind = MarginKind::additive;
  double value = 0.0;

  friend bool operator==(const Margin&, const Margin&) = default;
};

/// One-sided type-I rate and target power.
struct ErrorRates {
  double alpha = 0.025;
  double power = 0.9;

  friend bool operator==(const ErrorRates&, const ErrorRates&) = default;
};

struct DesignSpec {
  TrialKind trial_kind = TrialKind::noninferiority_two_arm;
  OutcomeFamily control;
  /// Exactly one entry for NI designs; k-1 experimental arms for multi-arm
  /// superiority designs.
  std::vector<OutcomeFamily> treatment;
  std::optional<Margin> margin;
  ErrorRates rates;
  Direction direction = Direction::higher_favorable;
  /// Unset means "use the operation's default": allocation and curves use the
  /// null boundary, sample size / power / simulation use the alternative.
  std::optional<ParameterPoint> variance_eval_point;

  const OutcomeFamily& treatment_arm() const { return treatment.at(0); }
  int arm_count() const noexcept { return static_cast<int>(treatment.size()) + 1; }

  friend bool operator==(const DesignSpec&, const DesignSpec&) = default;
};

/// Optimal allocation versus balanced allocation. `fractions` lists the
/// control first; for two-arm designs it is {h, 1-h}.
struct AllocationPlan {
  std::vector<double> fractions;
  double control_fraction = 0.5;
  /// (1-h)/h for two arms; for k arms, the mean experimental-arm size over the
  /// control size, (1-c1)/((k-1)c1).
  double ratio_treatment_to_control = 1.0;
  double are_vs_balanced = 1.0;
};

struct ValidateOptions {
  /// Require multiplicative margins strictly above 1.
  bool strict_ni = false;
};

/// Returns `spec` unchanged when every invariant holds; otherwise throws
/// ValidationError naming the first violated field.
DesignSpec validate(const DesignSpec& spec, ValidateOptions options = {});

void validate_family(const OutcomeFamily& family, std::string_view path);
void validate_margin(const Margin& margin, ValidateOptions options = {}, std::string_view path = "margin");
void validate_rates(const ErrorRates& rates, std::string_view path = "rates");

/// Treatment parameters at which the NI null hypothesis holds with equality.
/// For normal outcomes the returned sd is the control sd.
/// Throws DomainError when the boundary leaves the family's valid domain.
OutcomeFamily null_boundary(const OutcomeFamily& control, const Margin& margin, Direction direction);

/// Per-observation standard deviation.
double stddev(const OutcomeFamily& family);

/// Treatment arm of a two-arm NI spec at the requested parameter point
/// (normal arms keep the treatment sd at the boundary).
OutcomeFamily treatment_at(const DesignSpec& spec, ParameterPoint point);

/// Linear NI statistic  S = treatment_coef * mean_T + control_coef * mean_C + offset,
/// oriented so that H0 is E[S] <= 0 and H0 is rejected for large S:
///
///   additive,       higher favorable:  T - C + delta
///   additive,       lower favorable:   C - T + delta
///   multiplicative, higher favorable:  delta*T - C
///   multiplicative, lower favorable:   delta*C - T
struct TestContrast {
  double treatment_coef = 1.0;
  double control_coef = -1.0;
  double offset = 0.0;

  double mean(double control_location, double treatment_location) const noexcept {
    return treatment_coef * treatment_location + control_coef * control_location + offset;
  }
};

TestContrast make_contrast(const Margin& margin, Direction direction) noexcept;

std::string_view to_string(Family) noexcept;
std::string_view to_string(MarginKind) noexcept;
std::string_view to_string(Direction) noexcept;
std::string_view to_string(TrialKind) noexcept;
std::string_view to_string(ParameterPoint) noexcept;

}  // namespace trialalloc
