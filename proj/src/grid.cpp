#include "trialalloc/grid.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "trialalloc/errors.hpp"
#include "trialalloc/normal_dist.hpp"

namespace trialalloc {

GridSpec GridSpec::unit(double step) { return GridSpec{step, 1.0 - step, step}; }

std::size_t GridSpec::points() const {
  if (!(step > 0.0) || !(upper >= lower)) return 0;
  return static_cast<std::size_t>(std::floor((upper - lower) / step + 1e-9)) + 1;
}

void GridSpec::validate() const {
  if (!(std::isfinite(step) && step > 0.0)) throw ValidationError("grid.step", "step must be positive");
  if (!(lower > 0.0 && lower < 1.0)) throw ValidationError("grid.lower", "lower must lie in (0,1)");
  if (!(upper > 0.0 && upper < 1.0)) throw ValidationError("grid.upper", "upper must lie in (0,1)");
  if (!(lower < upper)) throw ValidationError("grid.lower", "lower must be below upper");
  if (points() < 10) throw ValidationError("grid.step", "grid needs at least 10 points");
}

TwoArmVarianceObjective TwoArmVarianceObjective::from_margin(const Margin& margin, double sigma_c,
                                                             double sigma_t) {
  validate_margin(margin);
  return TwoArmVarianceObjective{sigma_c, sigma_t, 1.0,
                                 margin.kind == MarginKind::multiplicative ? margin.value : 1.0};
}

TwoArmVarianceObjective TwoArmVarianceObjective::from_spec(const DesignSpec& spec) {
  const DesignSpec valid = validate(spec);
  if (valid.trial_kind != TrialKind::noninferiority_two_arm) {
    throw ValidationError("trial_kind", "a two-arm non-inferiority design is required");
  }
  const TestContrast contrast = make_contrast(*valid.margin, valid.direction);
  const ParameterPoint point = valid.variance_eval_point.value_or(ParameterPoint::null_boundary);
  return TwoArmVarianceObjective{stddev(valid.control), stddev(treatment_at(valid, point)),
                                 contrast.control_coef, contrast.treatment_coef};
}

double JungEventsObjective::operator()(double p) const {
  const double za = -normal_quantile(rates.alpha);
  const double zb = normal_quantile(rates.power);
  const double top = std::sqrt(delta0) * za + (p + (1.0 - p) * delta0) * zb;
  return top * top / (p * (1.0 - p) * (delta0 - 1.0) * (delta0 - 1.0));
}

double ChowEventsObjective::operator()(double p) const {
  const double z = -normal_quantile(rates.alpha) + normal_quantile(rates.power);
  const double lg = std::log(delta0);
  return z * z / (p * (1.0 - p) * lg * lg);
}

GridArgmin grid_minimize_fraction(const FractionObjective& objective, const GridSpec& grid, Execution exec,
                                  int threads) {
  grid.validate();
  const std::size_t n = grid.points();
  const kernels::ArgMin best = std::visit(
      [&](const auto& f) { return kernels::argmin(n, [&](std::size_t i) { return f(grid.at(i)); }, exec, threads); },
      objective);
  if (best.index >= n) throw DomainError("objective is not finite anywhere on the grid");
  return GridArgmin{grid.at(best.index), best.value, n};
}

double SimplexVarianceObjective::operator()(std::span<const double> fractions) const noexcept {
  const std::size_t k = sigmas.size();
  double total = static_cast<double>(k - 1) * sigmas[0] * sigmas[0] / fractions[0];
  for (std::size_t i = 1; i < k; ++i) total += sigmas[i] * sigmas[i] / fractions[i];
  return total;
}

namespace {

constexpr int kMaxSimplexArms = 6;

// One lattice level: free coordinates c_1..c_{k-1}, each centre[j] + (o - half) * step
// for o in [0, per_dim); c_k is the remainder. Points off the open simplex score +inf.
std::vector<double> simplex_level(const SimplexVarianceObjective& objective, const std::vector<double>& centre,
                                  int half, double step, Execution exec, int threads) {
  const std::size_t free = centre.size();
  const std::size_t per_dim = static_cast<std::size_t>(2 * half + 1);
  std::size_t total = 1;
  for (std::size_t j = 0; j < free; ++j) total *= per_dim;

  auto decode = [&](std::size_t index, std::span<double> point) -> bool {
    double used = 0.0;
    for (std::size_t j = 0; j < free; ++j) {
      const auto offset = static_cast<double>(index % per_dim) - half;
      index /= per_dim;
      point[j] = centre[j] + offset * step;
      if (!(point[j] > 0.5 * step * 1e-6)) return false;
      used += point[j];
    }
    point[free] = 1.0 - used;
    return point[free] > 0.5 * step * 1e-6;
  };

  const kernels::ArgMin best = kernels::argmin(
      total,
      [&](std::size_t index) {
        std::array<double, kMaxSimplexArms> buffer{};
        const std::span<double> point(buffer.data(), free + 1);
        if (!decode(index, point)) return std::numeric_limits<double>::infinity();
        return objective(point);
      },
      exec, threads);
  if (best.index >= total) throw DomainError("objective is not finite anywhere on the simplex lattice");

  std::vector<double> point(free + 1);
  decode(best.index, point);
  return point;
}

}  // namespace

std::vector<double> grid_minimize_simplex(const SimplexVarianceObjective& objective, const GridSpec& grid,
                                          Execution exec, int threads) {
  const int k = static_cast<int>(objective.sigmas.size());
  if (k < 2 || k > kMaxSimplexArms) {
    throw ValidationError("sigmas", "simplex grid oracle supports 2 to 6 arms");
  }
  for (double s : objective.sigmas) {
    if (!(std::isfinite(s) && s > 0.0)) throw ValidationError("sigmas", "standard deviation must be positive");
  }
  if (!(std::isfinite(grid.step) && grid.step > 0.0 && grid.step < 0.05)) {
    throw ValidationError("grid.step", "simplex step must lie in (0, 0.05)");
  }

  // Level 0: every lattice point of spacing 1/20 (centred at 1/2 with +-9 cells
  // covers 1/20 .. 19/20 in each free coordinate).
  double step = 0.05;
  std::vector<double> centre(static_cast<std::size_t>(k - 1), 0.5);
  std::vector<double> best = simplex_level(objective, centre, 9, step, exec, threads);

  const double target = grid.step / 4.0;
  while (step > target) {
    step /= 5.0;
    centre.assign(best.begin(), best.end() - 1);
    best = simplex_level(objective, centre, 10, step, exec, threads);
  }
  return best;
}

}  // namespace trialalloc
