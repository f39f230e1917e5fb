#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "trialalloc/kernels.hpp"
#include "trialalloc/model.hpp"

namespace trialalloc {

/// Evenly spaced fractions lower, lower + step, ... <= upper inside (0,1).
struct GridSpec {
  double lower = 1e-4;
  double upper = 1.0 - 1e-4;
  double step = 1e-4;

  /// Grid {step, 2 step, ...} covering the open unit interval.
  static GridSpec unit(double step);

  std::size_t points() const;
  double at(std::size_t i) const noexcept { return lower + static_cast<double>(i) * step; }
  /// Throws ValidationError unless 0 < lower < upper < 1, step > 0 and there are >= 10 points.
  void validate() const;
};

// Variance objectives, written out term by term so they share nothing with
// the closed forms they are used to check.

/// a_C^2 sigma_C^2 / h + a_T^2 sigma_T^2 / (1 - h) over the control fraction h.
struct TwoArmVarianceObjective {
  double control_sd = 1.0;
  double treatment_sd = 1.0;
  double control_coef = 1.0;
  double treatment_coef = 1.0;

  /// Statistic X_C - w X_T with w = 1 (additive) or delta (multiplicative).
  static TwoArmVarianceObjective from_margin(const Margin& margin, double sigma_c, double sigma_t);
  /// Statistic of the spec's contrast; treatment sd per variance_eval_point
  /// (default null boundary).
  static TwoArmVarianceObjective from_spec(const DesignSpec& spec);

  double operator()(double h) const noexcept {
    const double vc = control_coef * control_coef * control_sd * control_sd;
    const double vt = treatment_coef * treatment_coef * treatment_sd * treatment_sd;
    return vc / h + vt / (1.0 - h);
  }
};

/// (k - 1)/(1 - c) + 1/c: k-1 arms sharing 1 - c equally against a control c.
struct EqualVarianceArmsObjective {
  int k = 2;
  double operator()(double c) const noexcept {
    return static_cast<double>(k - 1) / (1.0 - c) + 1.0 / c;
  }
};

/// Events required by Jung's log-rank formula as a function of p.
struct JungEventsObjective {
  double delta0 = 1.5;
  ErrorRates rates;
  double operator()(double p) const;
};

/// Events required under S_C ~ S_T as a function of p.
struct ChowEventsObjective {
  double delta0 = 1.5;
  ErrorRates rates;
  double operator()(double p) const;
};

using FractionObjective =
    std::variant<TwoArmVarianceObjective, EqualVarianceArmsObjective, JungEventsObjective, ChowEventsObjective>;

struct GridArgmin {
  double argmin = 0.5;
  double value = 0.0;
  std::size_t points = 0;
};

/// Exhaustive scan of the grid; lowest index wins ties. Throws DomainError when
/// the objective is non-finite at every grid point.
GridArgmin grid_minimize_fraction(const FractionObjective& objective, const GridSpec& grid = {},
                                  Execution exec = Execution::parallel, int threads = 0);

/// (k-1) sigma_1^2 / c_1 + sum_{i>=2} sigma_i^2 / c_i over the open simplex.
struct SimplexVarianceObjective {
  std::vector<double> sigmas;
  double operator()(std::span<const double> fractions) const noexcept;
};

/// Lattice search over the simplex: exhaustive at spacing 1/20, then repeated
/// +-2-cell windows refined 5x until the spacing is below grid.step / 4.
/// Supports 2..6 arms. Returns fractions c_1..c_k summing to 1.
std::vector<double> grid_minimize_simplex(const SimplexVarianceObjective& objective, const GridSpec& grid = {},
                                          Execution exec = Execution::parallel, int threads = 0);

}  // namespace trialalloc
