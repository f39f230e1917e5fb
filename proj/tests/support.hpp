#pragma once

#include <cstdint>
#include <random>

#include "trialalloc/model.hpp"

namespace trialalloc::testing {

inline DesignSpec ni_spec(OutcomeFamily control, OutcomeFamily treatment, Margin margin,
                          Direction direction = Direction::higher_favorable, ErrorRates rates = {0.025, 0.9}) {
  DesignSpec spec;
  spec.trial_kind = TrialKind::noninferiority_two_arm;
  spec.control = control;
  spec.treatment = {treatment};
  spec.margin = margin;
  spec.rates = rates;
  spec.direction = direction;
  return spec;
}

/// Binomial mortality design: control 0.8%, additive margin 0.004, lower
/// outcome favourable, so the null boundary is 1.2%.
inline DesignSpec cport_spec() {
  return ni_spec(OutcomeFamily::binomial(0.008), OutcomeFamily::binomial(0.008),
                 Margin{MarginKind::additive, 0.004}, Direction::lower_favorable);
}

/// sd 1 both arms, equal true means, additive margin.
inline DesignSpec normal_spec(double margin) {
  return ni_spec(OutcomeFamily::normal(0.0, 1.0), OutcomeFamily::normal(0.0, 1.0),
                 Margin{MarginKind::additive, margin});
}

/// Seeded draws for property tests.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  double log_uniform(double lo, double hi);
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return integer(0, 1) == 1; }

  /// A valid two-arm NI spec of random family, margin kind and direction whose
  /// null boundary stays inside the family's domain.
  DesignSpec ni_design();
  /// Same, with the alternative strictly inside H_A (finite sample size).
  DesignSpec ni_design_with_gap();

 private:
  std::mt19937_64 gen_;
};

}  // namespace trialalloc::testing
