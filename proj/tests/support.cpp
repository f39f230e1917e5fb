#include "support.hpp"

#include <cmath>

namespace trialalloc::testing {

double Draws::log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

DesignSpec Draws::ni_design() {
  const auto family = static_cast<Family>(integer(0, 2));
  const MarginKind kind = coin() ? MarginKind::additive : MarginKind::multiplicative;
  const Direction direction = coin() ? Direction::higher_favorable : Direction::lower_favorable;
  const bool higher = direction == Direction::higher_favorable;

  OutcomeFamily control;
  OutcomeFamily treatment;
  double delta = 0.0;
  switch (family) {
    case Family::normal: {
      const double mean = uniform(1.0, 50.0);
      control = OutcomeFamily::normal(mean, log_uniform(0.2, 20.0));
      treatment = OutcomeFamily::normal(mean * uniform(0.9, 1.1), log_uniform(0.2, 20.0));
      delta = kind == MarginKind::additive ? uniform(0.01, 5.0) : uniform(1.0, 2.5);
      break;
    }
    case Family::binomial: {
      const double pi = uniform(0.02, 0.6);
      control = OutcomeFamily::binomial(pi);
      treatment = OutcomeFamily::binomial(pi);
      if (kind == MarginKind::additive) {
        const double room = higher ? pi : 1.0 - pi;
        delta = uniform(0.05, 0.9) * room;
      } else {
        delta = higher ? uniform(1.0, 2.5) : uniform(1.0, std::min(2.5, 0.95 / pi));
      }
      break;
    }
    case Family::poisson: {
      const double lambda = log_uniform(0.1, 50.0);
      control = OutcomeFamily::poisson(lambda);
      treatment = OutcomeFamily::poisson(lambda);
      delta = kind == MarginKind::additive ? (higher ? uniform(0.05, 0.9) * lambda : uniform(0.01, 5.0))
                                           : uniform(1.0, 2.5);
      break;
    }
  }
  DesignSpec spec;
  spec.trial_kind = TrialKind::noninferiority_two_arm;
  spec.control = control;
  spec.treatment = {treatment};
  spec.margin = Margin{kind, delta};
  spec.rates = {uniform(0.005, 0.1), uniform(0.6, 0.95)};
  spec.direction = direction;
  return spec;
}

DesignSpec Draws::ni_design_with_gap() {
  for (;;) {
    DesignSpec spec = ni_design();
    if (spec.margin->kind == MarginKind::multiplicative && spec.margin->value < 1.05) continue;
    // Put the true treatment effect equal to the control (a common planning
    // assumption); the statistic mean is then the margin gap.
    spec.treatment[0] = spec.treatment[0].with_location(spec.control.location());
    const TestContrast c = make_contrast(*spec.margin, spec.direction);
    if (c.mean(spec.control.location(), spec.treatment[0].location()) > 1e-6) return spec;
  }
}

}  // namespace trialalloc::testing
