#include "trialalloc/simulate.hpp"

#include <cmath>

#include <omp.h>

#include "trialalloc/errors.hpp"
#include "trialalloc/normal_dist.hpp"
#include "trialalloc/rng.hpp"

namespace trialalloc {

namespace {

struct ArmEstimate {
  double mean = 0.0;
  double variance = 0.0;
};

ArmEstimate draw_arm(const OutcomeFamily& family, std::int64_t n, Xoshiro256ss& gen, NormalSampler& normal) {
  const double nd = static_cast<double>(n);
  switch (family.tag) {
    case Family::normal: {
      // Welford
      double mean = 0.0;
      double m2 = 0.0;
      for (std::int64_t i = 0; i < n; ++i) {
        const double x = family.mean + family.sd * normal(gen);
        const double d = x - mean;
        mean += d / static_cast<double>(i + 1);
        m2 += d * (x - mean);
      }
      return {mean, m2 / (nd - 1.0)};
    }
    case Family::binomial: {
      const double p = static_cast<double>(sample_binomial(gen, n, family.pi)) / nd;
      return {p, p * (1.0 - p)};
    }
    case Family::poisson: {
      // The arm total is Poisson(n * lambda).
      const double rate = static_cast<double>(sample_poisson(gen, nd * family.lambda)) / nd;
      return {rate, rate};
    }
  }
  return {};
}

}  // namespace

ReplicateModel make_replicate_model(const DesignSpec& spec, std::int64_t n_control, std::int64_t n_treatment,
                                    ParameterPoint truth) {
  const DesignSpec valid = validate(spec);
  if (valid.trial_kind != TrialKind::noninferiority_two_arm) {
    throw ValidationError("trial_kind", "simulation requires a two-arm non-inferiority design");
  }
  const std::int64_t min_n = valid.control.tag == Family::normal ? 2 : 1;
  if (n_control < min_n) throw ValidationError("n_control", "arm size too small to estimate a variance");
  if (n_treatment < min_n) throw ValidationError("n_treatment", "arm size too small to estimate a variance");

  ReplicateModel model;
  model.control = valid.control;
  model.treatment = treatment_at(valid, truth);
  model.n_control = n_control;
  model.n_treatment = n_treatment;
  model.contrast = make_contrast(*valid.margin, valid.direction);
  model.critical_z = upper_quantile(valid.rates.alpha);
  return model;
}

bool replicate_rejects(const ReplicateModel& model, std::uint64_t seed, std::uint64_t index) {
  Xoshiro256ss gen = replicate_stream(seed, index);
  NormalSampler normal;
  const ArmEstimate c = draw_arm(model.control, model.n_control, gen, normal);
  const ArmEstimate t = draw_arm(model.treatment, model.n_treatment, gen, normal);

  const TestContrast& k = model.contrast;
  const double statistic = k.mean(c.mean, t.mean);
  const double var = k.control_coef * k.control_coef * c.variance / static_cast<double>(model.n_control) +
                     k.treatment_coef * k.treatment_coef * t.variance / static_cast<double>(model.n_treatment);
  if (!(var > 0.0)) return statistic > 0.0;
  return statistic > model.critical_z * std::sqrt(var);
}

namespace kernels {

std::uint64_t count_rejections_serial(const ReplicateModel& model, std::uint64_t seed, std::uint64_t first,
                                      std::uint64_t last) {
  std::uint64_t count = 0;
  for (std::uint64_t i = first; i < last; ++i) {
    if (replicate_rejects(model, seed, i)) ++count;
  }
  return count;
}

std::uint64_t count_rejections_parallel(const ReplicateModel& model, std::uint64_t seed, std::uint64_t reps,
                                        int threads) {
  std::uint64_t count = 0;
  const auto total = static_cast<long long>(reps);
#pragma omp parallel for schedule(static) reduction(+ : count) \
    num_threads(threads > 0 ? threads : omp_get_max_threads())
  for (long long i = 0; i < total; ++i) {
    if (replicate_rejects(model, seed, static_cast<std::uint64_t>(i))) ++count;
  }
  return count;
}

}  // namespace kernels

SimulationReport simulate_rejection_rate(const DesignSpec& spec, std::int64_t n_control, std::int64_t n_treatment,
                                         ParameterPoint truth, std::uint64_t reps, std::uint64_t seed,
                                         SimulationOptions options) {
  if (reps < kMinReplications) {
    throw ValidationError("reps", "insufficient replications: at least 1000 are required");
  }
  const ReplicateModel model = make_replicate_model(spec, n_control, n_treatment, truth);
  const std::uint64_t rejections = options.execution == Execution::serial
                                       ? kernels::count_rejections_serial(model, seed, 0, reps)
                                       : kernels::count_rejections_parallel(model, seed, reps, options.threads);

  SimulationReport report;
  report.replications = reps;
  report.seed = seed;
  report.rejections = rejections;
  report.estimate = static_cast<double>(rejections) / static_cast<double>(reps);
  report.standard_error = std::sqrt(report.estimate * (1.0 - report.estimate) / static_cast<double>(reps));
  return report;
}

}  // namespace trialalloc
