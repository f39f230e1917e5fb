#pragma once

#include <cstdint>
#include <optional>

#include "trialalloc/model.hpp"

namespace trialalloc {

// Event counts for a two-sample log-rank NI test of H0: HR >= delta0 under
// proportional hazards. p is the control share of the allocation.

enum class EventMethod { jung, chow };

struct SurvivalDesign {
  double delta0 = 1.0;
  ErrorRates rates;
  double p = 0.5;
  std::int64_t d_events = 0;
  EventMethod method = EventMethod::jung;
};

/// Minimiser of Jung's D over p:
///   (sqrt(d0) z_a + d0 z_b) / ((d0 + 1) z_b + 2 sqrt(d0) z_a).
/// Exactly 1/2 at d0 = 1.
double optimal_event_fraction(double delta0, const ErrorRates& rates);

/// The other stationary point of D(p), (sqrt(d0) z_a + d0 z_b) / (z_b (d0 - 1)).
/// It exceeds 1 for every d0 > 1, which is why it is discarded.
double rejected_stationary_point(double delta0, const ErrorRates& rates);

/// {sqrt(d0) z_a + (p + (1-p) d0) z_b}^2 / (p (1-p) (d0 - 1)^2), unrounded.
double jung_events(double delta0, const ErrorRates& rates, double p);
/// (z_a + z_b)^2 / (p (1-p) (log d0)^2), unrounded. Assumes S_C(t) ~ S_T(t).
double chow_events(double delta0, const ErrorRates& rates, double p);

std::int64_t events_required_jung(double delta0, const ErrorRates& rates, double p);
std::int64_t events_required_chow(double delta0, const ErrorRates& rates, double p);

/// Full design: p defaults to the method's optimum (Jung closed form, Chow 1/2).
SurvivalDesign design_events(double delta0, const ErrorRates& rates, EventMethod method,
                             std::optional<double> p = std::nullopt);

std::string_view to_string(EventMethod) noexcept;

}  // namespace trialalloc
