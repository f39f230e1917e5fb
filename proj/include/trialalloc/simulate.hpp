#pragma once

#include <cstdint>

#include "trialalloc/kernels.hpp"
#include "trialalloc/model.hpp"

namespace trialalloc {

struct SimulationReport {
  double estimate = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  double standard_error = 0.0;
  std::uint64_t rejections = 0;
};

inline constexpr std::uint64_t kMinReplications = 1000;

/// Everything one replicate needs: arm parameters at the simulated truth,
/// arm sizes, the NI statistic and its critical value.
struct ReplicateModel {
  OutcomeFamily control;
  OutcomeFamily treatment;
  std::int64_t n_control = 0;
  std::int64_t n_treatment = 0;
  TestContrast contrast;
  double critical_z = 1.959963984540054;
};

ReplicateModel make_replicate_model(const DesignSpec& spec, std::int64_t n_control, std::int64_t n_treatment,
                                    ParameterPoint truth);

/// One simulated trial: draw both arms from stream (seed, index), estimate each
/// arm's mean and variance (sample variance for normal; pi(1-pi) or lambda at
/// the estimate otherwise), and reject H0 when S > z_{1-alpha} * SE.
/// A zero SE rejects iff S > 0.
bool replicate_rejects(const ReplicateModel& model, std::uint64_t seed, std::uint64_t index);

namespace kernels {

/// Reference: rejections among replicates [first, last).
std::uint64_t count_rejections_serial(const ReplicateModel& model, std::uint64_t seed, std::uint64_t first,
                                      std::uint64_t last);

/// OpenMP over replicates; bit-identical to the serial count for any thread count.
std::uint64_t count_rejections_parallel(const ReplicateModel& model, std::uint64_t seed, std::uint64_t reps,
                                        int threads = 0);

}  // namespace kernels

struct SimulationOptions {
  Execution execution = Execution::parallel;
  /// 0 = OpenMP default.
  int threads = 0;
};

/// Monte-Carlo rejection rate of the one-sided normal-approximation NI test at
/// the chosen truth (power at `alternative`, type-I at `null_boundary`).
SimulationReport simulate_rejection_rate(const DesignSpec& spec, std::int64_t n_control, std::int64_t n_treatment,
                                         ParameterPoint truth, std::uint64_t reps, std::uint64_t seed,
                                         SimulationOptions options = {});

}  // namespace trialalloc
