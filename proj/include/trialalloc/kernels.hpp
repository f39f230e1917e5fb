#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#include <omp.h>

namespace trialalloc {

enum class Execution { serial, parallel };

namespace kernels {

/// Smallest finite value over indices [0, n); ties go to the lowest index.
/// `index == n` when no value is finite.
struct ArgMin {
  std::size_t index = 0;
  double value = std::numeric_limits<double>::infinity();
};

inline bool better(double value, std::size_t index, const ArgMin& best) {
  return value < best.value || (value == best.value && index < best.index);
}

/// Reference scan.
template <class F>
ArgMin argmin_serial(std::size_t n, F&& f) {
  ArgMin best{n, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = f(i);
    if (std::isfinite(v) && better(v, i, best)) best = {i, v};
  }
  return best;
}

/// OpenMP scan. The (value, index) order is total, so the result matches
/// argmin_serial for any thread count.
template <class F>
ArgMin argmin_parallel(std::size_t n, F&& f, int threads = 0) {
  ArgMin best{n, std::numeric_limits<double>::infinity()};
  const long long count = static_cast<long long>(n);
#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads())
  {
    ArgMin local{n, std::numeric_limits<double>::infinity()};
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      const double v = f(idx);
      if (std::isfinite(v) && better(v, idx, local)) local = {idx, v};
    }
#pragma omp critical(trialalloc_argmin)
    {
      if (local.index < n && better(local.value, local.index, best)) best = local;
    }
  }
  return best;
}

template <class F>
ArgMin argmin(std::size_t n, F&& f, Execution exec, int threads = 0) {
  return exec == Execution::serial ? argmin_serial(n, f) : argmin_parallel(n, f, threads);
}

}  // namespace kernels
}  // namespace trialalloc
