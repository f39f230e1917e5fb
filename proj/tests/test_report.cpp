#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "support.hpp"
#include "trialalloc/allocation.hpp"
#include "trialalloc/errors.hpp"
#include "trialalloc/report.hpp"

using namespace trialalloc;
using trialalloc::testing::cport_spec;
using trialalloc::testing::normal_spec;

TEST_SUITE("report") {
  TEST_CASE("relative efficiency of common ratios for the mortality design") {
    const auto spec = cport_spec();
    CHECK(efficiency_at_ratio(spec, 1.0 / 3.0) == doctest::Approx(1.48).epsilon(0.005 / 1.48));
    CHECK(efficiency_at_ratio(spec, 1.0) == doctest::Approx(1.01).epsilon(0.005 / 1.01));
    CHECK(efficiency_at_ratio(spec, 1.22) == doctest::Approx(1.00).epsilon(0.005));
    CHECK(efficiency_at_ratio(spec, 3.0) == doctest::Approx(1.21).epsilon(0.005 / 1.21));
    // Literal 0.33 sits just outside the 1.48 +- 0.005 band.
    CHECK(efficiency_at_ratio(spec, 0.33) == doctest::Approx(1.4885).epsilon(1e-4));
  }

  TEST_CASE("curve minimum sits at the optimal ratio") {
    const auto curve = efficiency_curve(cport_spec(), 0.2, 4.0, 401);
    REQUIRE(curve.points.size() == 401);
    CHECK(curve.points.front().ratio == doctest::Approx(0.2));
    CHECK(curve.points.back().ratio == doctest::Approx(4.0));
    CHECK(curve.optimal_ratio == doctest::Approx(1.22227).epsilon(1e-5));
    const auto best = std::min_element(curve.points.begin(), curve.points.end(), [](auto& a, auto& b) {
      return a.relative_efficiency < b.relative_efficiency;
    });
    CHECK(best->ratio == doctest::Approx(1.22).epsilon(0.01));
    for (const auto& p : curve.points) CHECK(p.relative_efficiency >= 1.0 - 1e-12);

    const auto symmetric = efficiency_curve(normal_spec(0.5), 0.25, 4.0, 201);
    CHECK(symmetric.optimal_ratio == doctest::Approx(1.0));
    CHECK(symmetric.points[100].ratio == doctest::Approx(1.0));
    CHECK(symmetric.points[100].relative_efficiency == doctest::Approx(1.0));
  }

  TEST_CASE("curve arguments are validated") {
    CHECK_THROWS_AS(efficiency_curve(cport_spec(), 0.2, 4.0, 1), ValidationError);
    CHECK_THROWS_AS(efficiency_curve(cport_spec(), 4.0, 0.2, 10), ValidationError);
    CHECK_THROWS_AS(efficiency_curve(cport_spec(), 0.0, 4.0, 10), ValidationError);
  }

  TEST_CASE("ARE against the margin") {
    const auto deltas = linear_grid(1.0, 2.0, 11);
    REQUIRE(deltas.size() == 11);
    const auto mult = are_vs_delta_curve(MarginKind::multiplicative, 1.0, 1.0, deltas);
    CHECK(mult.front().are == doctest::Approx(1.0));
    CHECK(mult.back().are == doctest::Approx(10.0 / 9.0));
    for (std::size_t i = 1; i < mult.size(); ++i) CHECK(mult[i].are >= mult[i - 1].are);

    const auto add = are_vs_delta_curve(MarginKind::additive, 40.0, 100.0, deltas);
    for (const auto& p : add) CHECK(p.are == doctest::Approx(1.183673).epsilon(1e-6));
  }

  TEST_CASE("csv round trip") {
    const auto curve = efficiency_curve(cport_spec(), 0.2, 4.0, 37);
    const std::string csv = curve_csv(curve);
    CHECK(csv.rfind("ratio,relative_efficiency\n", 0) == 0);
    const auto parsed = parse_curve_csv(csv);
    REQUIRE(parsed.size() == curve.points.size());
    for (std::size_t i = 0; i < parsed.size(); ++i) {
      CHECK(parsed[i].ratio == doctest::Approx(curve.points[i].ratio).epsilon(1e-5));
      CHECK(parsed[i].relative_efficiency == doctest::Approx(curve.points[i].relative_efficiency).epsilon(1e-5));
    }
    CHECK_THROWS_AS(parse_curve_csv("x,y\n1,2\n"), ValidationError);
    CHECK_THROWS_AS(parse_curve_csv("ratio,relative_efficiency\n1;2\n"), ValidationError);
  }

  TEST_CASE("tables round to two decimals") {
    const auto curve = efficiency_curve(cport_spec(), 1.0 / 3.0, 3.0, 3);
    const std::string table = curve_table(curve);
    CHECK(table.find("1.48") != std::string::npos);
    CHECK(allocation_table(allocate(cport_spec())).find("1.22") != std::string::npos);
  }

  TEST_CASE("json encodings carry the result fields") {
    const auto j = to_json(allocate(cport_spec()));
    CHECK(j.at("control_fraction").get<double>() == doctest::Approx(0.44999).epsilon(1e-4));
    CHECK(j.at("fractions").size() == 2);
  }
}
