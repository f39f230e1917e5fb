#include <doctest.h>

#include <cmath>
#include <vector>

#include "support.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/rng.hpp"
#include "trialalloc/sample_size.hpp"
#include "trialalloc/simulate.hpp"

using namespace trialalloc;
using trialalloc::testing::normal_spec;

namespace {

double binomial_pmf(int n, int k, double p) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) + k * std::log(p) +
                  (n - k) * std::log1p(-p));
}

double poisson_pmf(int k, double m) { return std::exp(k * std::log(m) - m - std::lgamma(k + 1.0)); }

// Pearson statistic over cells with expected count >= 5 (others pooled).
template <class Pmf>
std::pair<double, int> chi_square(const std::vector<int>& counts, int draws, Pmf pmf) {
  double stat = 0.0;
  int cells = 0;
  double pooled_obs = 0.0;
  double pooled_exp = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double expected = draws * pmf(static_cast<int>(k));
    if (expected >= 5.0) {
      stat += (counts[k] - expected) * (counts[k] - expected) / expected;
      ++cells;
    } else {
      pooled_obs += counts[k];
      pooled_exp += expected;
    }
  }
  if (pooled_exp > 0.0) {
    stat += (pooled_obs - pooled_exp) * (pooled_obs - pooled_exp) / pooled_exp;
    ++cells;
  }
  return {stat, cells - 1};
}

}  // namespace

TEST_SUITE("rng") {
  TEST_CASE("reference sequences") {
    auto g = Xoshiro256ss::from_state(1, 2, 3, 4);
    CHECK(g() == 11520ULL);
    CHECK(g() == 0ULL);
    CHECK(g() == 1509978240ULL);
    CHECK(g() == 1215971899390074240ULL);

    std::uint64_t state = 0;
    CHECK(splitmix64_next(state) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64_next(state) == 0x6e789e6aa1b965f4ULL);
  }

  TEST_CASE("replicate streams are distinct and reproducible") {
    auto a = replicate_stream(7, 0);
    auto b = replicate_stream(7, 1);
    auto a2 = replicate_stream(7, 0);
    const auto first = a();
    CHECK(first != b());
    CHECK(first == a2());
    for (int i = 0; i < 1000; ++i) {
      const double u = a.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
  }

  TEST_CASE("binomial draws match the pmf") {
    for (const auto& [n, p] : {std::pair{20, 0.3}, std::pair{400, 0.008}, std::pair{30, 0.9}, std::pair{60000, 0.01}}) {
      CAPTURE(n);
      CAPTURE(p);
      auto g = replicate_stream(99, static_cast<std::uint64_t>(n));
      const int draws = 40000;
      std::vector<int> counts(static_cast<std::size_t>(n) + 1, 0);
      for (int i = 0; i < draws; ++i) {
        const auto k = sample_binomial(g, n, p);
        REQUIRE(k >= 0);
        REQUIRE(k <= n);
        ++counts[static_cast<std::size_t>(k)];
      }
      const auto [stat, df] = chi_square(counts, draws, [&](int k) { return binomial_pmf(n, k, p); });
      // Wilson-Hilferty 99.99% bound for chi-square(df).
      const double bound = df * std::pow(1.0 - 2.0 / (9.0 * df) + 3.719 * std::sqrt(2.0 / (9.0 * df)), 3);
      CHECK(stat < bound);
    }
  }

  TEST_CASE("poisson draws match the pmf") {
    for (double m : {0.05, 3.0, 80.0, 2500.0}) {
      CAPTURE(m);
      auto g = replicate_stream(5, static_cast<std::uint64_t>(m * 100));
      const int draws = 40000;
      std::vector<int> counts(static_cast<std::size_t>(m + 20 * std::sqrt(m) + 20), 0);
      for (int i = 0; i < draws; ++i) {
        const auto k = sample_poisson(g, m);
        REQUIRE(k >= 0);
        if (static_cast<std::size_t>(k) < counts.size()) ++counts[static_cast<std::size_t>(k)];
      }
      const auto [stat, df] = chi_square(counts, draws, [&](int k) { return poisson_pmf(k, m); });
      const double bound = df * std::pow(1.0 - 2.0 / (9.0 * df) + 3.719 * std::sqrt(2.0 / (9.0 * df)), 3);
      CHECK(stat < bound);
    }
  }

  TEST_CASE("normal deviates have unit moments") {
    auto g = replicate_stream(3, 3);
    NormalSampler normal;
    double sum = 0.0;
    double sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double z = normal(g);
      sum += z;
      sq += z * z;
    }
    CHECK(std::fabs(sum / n) < 5.0 / std::sqrt(n));
    CHECK(std::fabs(sq / n - 1.0) < 5.0 * std::sqrt(2.0 / n));
  }
}

TEST_SUITE("simulate") {
  TEST_CASE("precondition on replications") {
    CHECK_THROWS_WITH_AS(simulate_rejection_rate(normal_spec(0.5), 85, 85, ParameterPoint::alternative, 10, 1),
                         doctest::Contains("insufficient replications"), ValidationError);
    CHECK_THROWS_AS(simulate_rejection_rate(normal_spec(0.5), 1, 85, ParameterPoint::alternative, 1000, 1),
                    ValidationError);
  }

  TEST_CASE("report fields") {
    const auto r = simulate_rejection_rate(normal_spec(0.5), 85, 85, ParameterPoint::alternative, 5000, 42);
    CHECK(r.replications == 5000);
    CHECK(r.seed == 42);
    CHECK(r.estimate == static_cast<double>(r.rejections) / 5000.0);
    CHECK(std::fabs(r.standard_error - std::sqrt(r.estimate * (1 - r.estimate) / 5000.0)) <= 1e-12);
  }

  TEST_CASE("bit-identical across runs and worker counts") {
    auto spec = trialalloc::testing::cport_spec();
    spec.treatment[0] = OutcomeFamily::binomial(0.008);
    for (const DesignSpec& s : {normal_spec(0.5), spec}) {
      const auto reference = simulate_rejection_rate(s, 300, 400, ParameterPoint::null_boundary, 3000, 77,
                                                     SimulationOptions{Execution::serial, 1});
      for (int threads : {1, 2, 4, 7}) {
        const auto r = simulate_rejection_rate(s, 300, 400, ParameterPoint::null_boundary, 3000, 77,
                                               SimulationOptions{Execution::parallel, threads});
        CHECK(r.rejections == reference.rejections);
        CHECK(r.estimate == reference.estimate);
        CHECK(r.standard_error == reference.standard_error);
      }
    }
  }

  TEST_CASE("partitioned serial counts sum to the whole") {
    const ReplicateModel model = make_replicate_model(normal_spec(0.5), 40, 40, ParameterPoint::alternative);
    const auto whole = kernels::count_rejections_serial(model, 9, 0, 2000);
    const auto split = kernels::count_rejections_serial(model, 9, 0, 700) +
                       kernels::count_rejections_serial(model, 9, 700, 2000);
    CHECK(whole == split);
    CHECK(kernels::count_rejections_parallel(model, 9, 2000, 3) == whole);
  }

  TEST_CASE("poisson and ratio designs are calibrated near their analytic power") {
    auto spec = trialalloc::testing::ni_spec(OutcomeFamily::poisson(4.0), OutcomeFamily::poisson(4.0),
                                             Margin{MarginKind::multiplicative, 1.25});
    const auto n = sample_size_ni(spec);
    const auto power = simulate_rejection_rate(spec, n.n_control, n.n_treatment, ParameterPoint::alternative, 20000, 8);
    const double analytic = achieved_power(spec, n.n_control, n.n_treatment);
    CHECK(std::fabs(power.estimate - analytic) <= 4.0 * power.standard_error + 0.01);

    const auto alpha = simulate_rejection_rate(spec, n.n_control, n.n_treatment, ParameterPoint::null_boundary, 20000, 9);
    CHECK(std::fabs(alpha.estimate - 0.025) <= 4.0 * alpha.standard_error + 0.005);
  }
}
