#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "trialalloc/normal_dist.hpp"

using namespace trialalloc;

namespace {

// Bisection on the erfc-based CDF; independent of the rational approximation.
double quantile_by_bisection(double p) {
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_SUITE("normal_dist") {
  TEST_CASE("quantiles against 30-digit reference values") {
    struct Row {
      double p;
      double z;
    };
    // mpmath: sqrt(2) * erfinv(2p - 1) at 30 digits, p taken as the stored double.
    const Row rows[] = {{0.5, 0.0},
                        {0.975, 1.9599639845400542355},
                        {0.025, -1.9599639845400542355},
                        {0.9, 1.281551565544600467},
                        {0.8, 0.84162123357291420518},
                        {0.95, 1.6448536269514727149},
                        {0.3, -0.52440051270804078404},
                        {1e-10, -6.3613409024040562047},
                        {0.999999, 4.7534243088170877657}};
    for (const auto& row : rows) {
      CAPTURE(row.p);
      CHECK(std::fabs(normal_quantile(row.p) - row.z) <= 1e-12);
    }
  }

  TEST_CASE("quantile agrees with bisection of the CDF to 1e-9") {
    for (double p = 1e-12; p < 1.0; p = p < 0.01 ? p * 3.7 : p + 0.0123) {
      CAPTURE(p);
      CHECK(std::fabs(normal_quantile(p) - quantile_by_bisection(p)) <= 1e-9);
    }
  }

  TEST_CASE("domain") {
    CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
    CHECK(upper_quantile(0.025) == doctest::Approx(1.959963984540054).epsilon(1e-14));
    CHECK(normal_cdf(0.0) == 0.5);
  }
}
