#include "trialalloc/survival.hpp"

#include <cmath>

#include "trialalloc/errors.hpp"
#include "trialalloc/normal_dist.hpp"

namespace trialalloc {

namespace {

void check_delta0(double delta0, bool strictly_above_one, const char* what) {
  if (!std::isfinite(delta0)) throw ValidationError("delta0", "hazard-ratio margin must be finite");
  if (strictly_above_one) {
    if (!(delta0 > 1.0)) throw DomainError(std::string("margin must exceed 1 for the ") + what + " formula");
  } else if (!(delta0 >= 1.0)) {
    throw ValidationError("delta0", "hazard-ratio margin must be at least 1");
  }
}

void check_p(double p) {
  if (!(std::isfinite(p) && p > 0.0 && p < 1.0)) {
    throw ValidationError("p", "event fraction must lie strictly in (0,1)");
  }
}

std::int64_t ceil_events(double d) {
  if (!std::isfinite(d) || d > 9.0e15) throw DomainError("required event count is not finite");
  return static_cast<std::int64_t>(std::ceil(d));
}

}  // namespace

double optimal_event_fraction(double delta0, const ErrorRates& rates) {
  check_delta0(delta0, false, "");
  validate_rates(rates);
  if (delta0 == 1.0) return 0.5;
  const double za = upper_quantile(rates.alpha);
  const double zb = upper_quantile(1.0 - rates.power);
  const double root = std::sqrt(delta0);
  return (root * za + delta0 * zb) / ((delta0 + 1.0) * zb + 2.0 * root * za);
}

double rejected_stationary_point(double delta0, const ErrorRates& rates) {
  check_delta0(delta0, true, "stationary-point");
  validate_rates(rates);
  const double za = upper_quantile(rates.alpha);
  const double zb = upper_quantile(1.0 - rates.power);
  return (std::sqrt(delta0) * za + delta0 * zb) / (zb * (delta0 - 1.0));
}

double jung_events(double delta0, const ErrorRates& rates, double p) {
  check_delta0(delta0, true, "Jung");
  validate_rates(rates);
  check_p(p);
  const double za = upper_quantile(rates.alpha);
  const double zb = upper_quantile(1.0 - rates.power);
  const double num = std::sqrt(delta0) * za + (p + (1.0 - p) * delta0) * zb;
  const double gap = delta0 - 1.0;
  return num * num / (p * (1.0 - p) * gap * gap);
}

double chow_events(double delta0, const ErrorRates& rates, double p) {
  check_delta0(delta0, true, "Chow");
  validate_rates(rates);
  check_p(p);
  const double z = upper_quantile(rates.alpha) + upper_quantile(1.0 - rates.power);
  const double log_margin = std::log(delta0);
  return z * z / (p * (1.0 - p) * log_margin * log_margin);
}

std::int64_t events_required_jung(double delta0, const ErrorRates& rates, double p) {
  return ceil_events(jung_events(delta0, rates, p));
}

std::int64_t events_required_chow(double delta0, const ErrorRates& rates, double p) {
  return ceil_events(chow_events(delta0, rates, p));
}

SurvivalDesign design_events(double delta0, const ErrorRates& rates, EventMethod method,
                             std::optional<double> p) {
  SurvivalDesign out;
  out.delta0 = delta0;
  out.rates = rates;
  out.method = method;
  if (method == EventMethod::jung) {
    out.p = p.value_or(optimal_event_fraction(delta0, rates));
    out.d_events = events_required_jung(delta0, rates, out.p);
  } else {
    out.p = p.value_or(0.5);
    out.d_events = events_required_chow(delta0, rates, out.p);
  }
  return out;
}

std::string_view to_string(EventMethod m) noexcept { return m == EventMethod::jung ? "jung" : "chow"; }

}  // namespace trialalloc
