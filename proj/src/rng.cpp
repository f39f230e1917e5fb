#include "trialalloc/rng.hpp"

#include <algorithm>
#include <cmath>

namespace trialalloc {

namespace {

constexpr double kExactSearchMean = 100.0;
constexpr double kTailSds = 10.0;

}  // namespace

std::int64_t sample_poisson(Xoshiro256ss& gen, double mean) {
  if (!(mean > 0.0)) return 0;
  const double u = gen.uniform();
  const double sd = std::sqrt(mean);

  std::int64_t k = 0;
  if (mean >= kExactSearchMean) {
    k = static_cast<std::int64_t>(std::floor(mean - kTailSds * sd));
  }
  double pmf = std::exp(static_cast<double>(k) * std::log(mean) - mean - std::lgamma(static_cast<double>(k) + 1.0));
  double cdf = pmf;
  const double k_max = mean + 40.0 * sd + 50.0;
  while (u >= cdf && static_cast<double>(k) < k_max) {
    ++k;
    pmf *= mean / static_cast<double>(k);
    cdf += pmf;
  }
  return k;
}

std::int64_t sample_binomial(Xoshiro256ss& gen, std::int64_t n, double pi) {
  if (n <= 0 || !(pi > 0.0)) return 0;
  if (!(pi < 1.0)) return n;
  if (pi > 0.5) return n - sample_binomial(gen, n, 1.0 - pi);

  const double u = gen.uniform();
  const double nd = static_cast<double>(n);
  const double mean = nd * pi;
  const double sd = std::sqrt(mean * (1.0 - pi));
  const double odds = pi / (1.0 - pi);

  std::int64_t k = 0;
  double pmf;
  if (mean >= kExactSearchMean) {
    k = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::floor(mean - kTailSds * sd)));
    const double kd = static_cast<double>(k);
    pmf = std::exp(std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0) +
                   kd * std::log(pi) + (nd - kd) * std::log1p(-pi));
  } else {
    pmf = std::exp(nd * std::log1p(-pi));
  }
  double cdf = pmf;
  while (u >= cdf && k < n) {
    pmf *= static_cast<double>(n - k) / static_cast<double>(k + 1) * odds;
    ++k;
    cdf += pmf;
  }
  return k;
}

}  // namespace trialalloc
