#include <doctest.h>

#include <cmath>
#include <numeric>

#include "support.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/grid.hpp"

using namespace trialalloc;
using trialalloc::testing::Draws;

TEST_SUITE("grid_oracle") {
  TEST_CASE("grid spec") {
    const GridSpec g;
    CHECK(g.points() == 9999);
    CHECK(g.at(0) == 1e-4);
    CHECK(std::fabs(g.at(g.points() - 1) - 0.9999) < 1e-12);
    CHECK_THROWS_AS((GridSpec{0.2, 0.1, 0.01}.validate()), ValidationError);
    CHECK_THROWS_AS((GridSpec{0.1, 0.2, 0.05}.validate()), ValidationError);
    CHECK_THROWS_AS((GridSpec{0.0, 0.5, 0.01}.validate()), ValidationError);
  }

  TEST_CASE("examples") {
    const Margin add{MarginKind::additive, 1.0};
    CHECK(std::fabs(grid_minimize_fraction(TwoArmVarianceObjective::from_margin(add, 7, 7)).argmin - 0.5) <= 1e-4);
    CHECK(std::fabs(grid_minimize_fraction(TwoArmVarianceObjective::from_margin(add, 40, 100)).argmin - 0.2857) <= 1e-4);
    CHECK(std::fabs(grid_minimize_fraction(EqualVarianceArmsObjective{5}).argmin - 0.3333) <= 1e-4);
  }

  TEST_CASE("non-finite objective everywhere") {
    const TwoArmVarianceObjective nan_objective{std::nan(""), 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(grid_minimize_fraction(nan_objective), DomainError);
  }

  TEST_CASE("serial and parallel scans agree for every thread count") {
    Draws draws(51);
    for (int i = 0; i < 20; ++i) {
      const TwoArmVarianceObjective f{draws.log_uniform(0.1, 10), draws.log_uniform(0.1, 10), 1.0,
                                      draws.uniform(1.0, 3.0)};
      const auto serial = grid_minimize_fraction(f, {}, Execution::serial);
      for (int threads : {1, 2, 3, 8}) {
        const auto parallel = grid_minimize_fraction(f, {}, Execution::parallel, threads);
        CHECK(parallel.argmin == serial.argmin);
        CHECK(parallel.value == serial.value);
      }
    }
  }

  TEST_CASE("ties resolve to the lowest index") {
    const auto flat = [](std::size_t) { return 1.0; };
    CHECK(kernels::argmin_serial(100, flat).index == 0);
    CHECK(kernels::argmin_parallel(100, flat, 4).index == 0);
  }

  TEST_CASE("halving the step moves the argmin by at most one old step") {
    Draws draws(52);
    for (int i = 0; i < 100; ++i) {
      const TwoArmVarianceObjective f{draws.log_uniform(0.1, 10), draws.log_uniform(0.1, 10), 1.0,
                                      draws.uniform(1.0, 3.0)};
      const double step = 1e-3;
      const double coarse = grid_minimize_fraction(f, GridSpec::unit(step)).argmin;
      const double fine = grid_minimize_fraction(f, GridSpec::unit(step / 2)).argmin;
      CHECK(std::fabs(coarse - fine) <= step + 1e-12);
    }
  }

  TEST_CASE("simplex lattice search") {
    const SimplexVarianceObjective equal{{1, 1, 1, 1, 1}};
    const auto c = grid_minimize_simplex(equal);
    CHECK(std::fabs(c[0] - 1.0 / 3.0) <= 2e-4);
    CHECK(std::fabs(std::accumulate(c.begin(), c.end(), 0.0) - 1.0) <= 1e-12);

    const SimplexVarianceObjective two{{1.0, 3.0}};
    CHECK(std::fabs(grid_minimize_simplex(two)[0] - 0.25) <= 2e-4);

    CHECK_THROWS_AS(grid_minimize_simplex(SimplexVarianceObjective{{1, 1, 1, 1, 1, 1, 1}}), ValidationError);
    CHECK_THROWS_AS(grid_minimize_simplex(SimplexVarianceObjective{{1}}), ValidationError);

    const SimplexVarianceObjective skewed{{0.3, 4.0, 1.0, 2.5}};
    const auto s = grid_minimize_simplex(skewed, {}, Execution::serial);
    const auto p = grid_minimize_simplex(skewed, {}, Execution::parallel, 3);
    CHECK(s == p);
  }
}
