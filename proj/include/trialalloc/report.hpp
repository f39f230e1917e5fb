#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "trialalloc/model.hpp"
#include "trialalloc/sample_size.hpp"
#include "trialalloc/simulate.hpp"
#include "trialalloc/survival.hpp"

namespace trialalloc {

struct CurvePoint {
  double ratio = 1.0;
  double relative_efficiency = 1.0;
};

/// Relative efficiency to the optimal allocation over treatment:control ratios.
struct EfficiencyCurve {
  std::vector<CurvePoint> points;
  double optimal_ratio = 1.0;
  DesignSpec spec;
};

/// V(r) / V(r*) with V(r) proportional to (1 + r)(a_C^2 + a_T^2 / r), r = n_T / n_C.
double efficiency_at_ratio(const DesignSpec& spec, double ratio);

/// `points` log-spaced ratios over [r_min, r_max], endpoints included.
EfficiencyCurve efficiency_curve(const DesignSpec& spec, double r_min, double r_max, int points);

struct DeltaCurvePoint {
  double delta = 1.0;
  double are = 1.0;
};

/// ni_are at each margin in `deltas` for fixed sd's.
std::vector<DeltaCurvePoint> are_vs_delta_curve(MarginKind kind, double sigma_c, double sigma_t,
                                                std::span<const double> deltas);

/// `points` evenly spaced values over [lo, hi].
std::vector<double> linear_grid(double lo, double hi, int points);

// JSON encodings (full precision).
nlohmann::json to_json(const AllocationPlan& plan);
nlohmann::json to_json(const SampleSizeResult& result);
nlohmann::json to_json(const SurvivalDesign& design);
nlohmann::json to_json(const SimulationReport& report);
nlohmann::json to_json(const EfficiencyCurve& curve);
nlohmann::json to_json(std::span<const DeltaCurvePoint> curve);

// CSV at 6 significant digits with a header row.
std::string curve_csv(const EfficiencyCurve& curve);
std::string delta_curve_csv(std::span<const DeltaCurvePoint> curve);
/// Parses the output of curve_csv; throws ValidationError on a malformed header or row.
std::vector<CurvePoint> parse_curve_csv(std::string_view text);

// Human-readable tables; efficiencies rounded to two decimals.
std::string curve_table(const EfficiencyCurve& curve);
std::string delta_curve_table(std::span<const DeltaCurvePoint> curve);
std::string allocation_table(const AllocationPlan& plan);
std::string sample_size_table(const SampleSizeResult& result);
std::string survival_table(const SurvivalDesign& design);
std::string simulation_table(const SimulationReport& report);

}  // namespace trialalloc
