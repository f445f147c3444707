#include "gridres/fragility.hpp"

#include <cmath>

#include "doctest.h"
#include "gridres/common.hpp"
#include "test_helpers.hpp"

using namespace gridres;

namespace {

PowerLine overhead_line(double vegetation = 0.0) {
  PowerLine l;
  l.id = "l";
  l.overhead = true;
  l.vegetation = vegetation;
  l.length_m = 100;
  return l;
}

}  // namespace

TEST_CASE("effective_threshold scales with factor and vegetation") {
  FragilityParams p;
  p.theta0_ms = 30;
  p.veg_sensitivity = 0.2;

  p.fragility_factor = 1.0;
  CHECK(effective_threshold(overhead_line(0), p) == doctest::Approx(30.0));
  p.fragility_factor = 1.2;
  CHECK(effective_threshold(overhead_line(0), p) == doctest::Approx(25.0));
  p.fragility_factor = 0.8;
  CHECK(effective_threshold(overhead_line(0.5), p) == doctest::Approx(33.75));
}

TEST_CASE("failure_probability follows the capped logistic") {
  FragilityParams p;
  p.theta0_ms = 30;
  p.slope_ms = 3;
  p.fragility_factor = 1.0;
  p.veg_sensitivity = 0.0;
  p.p_cap = 1.0;

  PowerLine under = overhead_line();
  under.overhead = false;
  CHECK(failure_probability(80.0, under, p) == 0.0);
  CHECK(failure_probability(0.0, under, p) == 0.0);

  CHECK(failure_probability(30.0, overhead_line(), p) == doctest::Approx(0.5));
  CHECK(failure_probability(33.0, overhead_line(), p) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));

  p.p_cap = 0.95;
  CHECK(failure_probability(300.0, overhead_line(), p) == doctest::Approx(0.95));
}

TEST_CASE("failure_probability monotonicity properties") {
  FragilityParams p;
  const auto line = overhead_line(0.3);
  double prev = -1;
  for (double g = 0; g <= 60; g += 2.5) {
    const double prob = failure_probability(g, line, p);
    CHECK(prob >= prev);
    CHECK(prob >= 0.0);
    CHECK(prob <= p.p_cap);
    prev = prob;
  }

  // Family ordering: larger factors dominate pointwise.
  for (double g : {10.0, 20.0, 30.0, 40.0}) {
    FragilityParams lo = p;
    lo.fragility_factor = 0.6;
    FragilityParams hi = p;
    hi.fragility_factor = 1.2;
    CHECK(failure_probability(g, line, lo) <= failure_probability(g, line, hi));
  }

  // More vegetation exposure never reduces the probability.
  for (double g : {25.0, 35.0}) {
    CHECK(failure_probability(g, overhead_line(0.1), p) <=
          failure_probability(g, overhead_line(0.9), p));
  }
}

TEST_CASE("sample_hourly_failures draws one variate per intact overhead line") {
  const auto net = test::five_node_chain();
  FragilityParams p;

  SUBCASE("calm frame fails nothing on a seeded stream") {
    WeatherFrame frame;
    frame.gust["P0"] = 0.0;
    rng::Stream s(1);
    CHECK(sample_hourly_failures(net, frame, {}, p, s).empty());
  }

  SUBCASE("already-failed lines are never re-sampled") {
    WeatherFrame frame;
    frame.gust["P0"] = 500.0;
    std::set<std::string> all = {"root-a", "a-b", "b-c", "c-d"};
    rng::Stream s(1);
    CHECK(sample_hourly_failures(net, frame, all, p, s).empty());
  }

  SUBCASE("missing patch gust is an input error") {
    WeatherFrame frame;
    frame.gust["WRONG"] = 10.0;
    rng::Stream s(1);
    CHECK_THROWS_AS(sample_hourly_failures(net, frame, {}, p, s), InputError);
  }

  SUBCASE("p_cap of zero never fails a line") {
    FragilityParams capped = p;
    capped.p_cap = 0.0;
    WeatherFrame frame;
    frame.gust["P0"] = 500.0;
    rng::Stream s(7);
    for (int k = 0; k < 50; ++k) {
      CHECK(sample_hourly_failures(net, frame, {}, capped, s).empty());
    }
  }

  SUBCASE("empirical frequency matches the closed-form probability") {
    // Single overhead line at gust = theta_eff + slope: p = 0.7311.
    PowerNetwork net1;
    PowerNode root;
    root.id = "r";
    root.feeder_id = "F";
    root.kind = NodeKind::SubstationRoot;
    root.patch_id = "P0";
    PowerNode leaf;
    leaf.id = "x";
    leaf.feeder_id = "F";
    leaf.customers = 1;
    leaf.patch_id = "P0";
    leaf.kind = NodeKind::ServicePoint;
    PowerLine line = overhead_line();
    line.from_node = "r";
    line.to_node = "x";
    line.feeder_id = "F";
    net1.nodes = {root, leaf};
    net1.lines = {line};
    net1.feeders["F"] = "r";

    FragilityParams p1;
    p1.fragility_factor = 1.0;
    p1.veg_sensitivity = 0.0;
    p1.p_cap = 1.0;
    WeatherFrame frame;
    frame.gust["P0"] = p1.theta0_ms + p1.slope_ms;
    const double expected = 1.0 / (1.0 + std::exp(-1.0));

    rng::Stream s(20240811);
    int failures = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; ++k) {
      failures += sample_hourly_failures(net1, frame, {}, p1, s).empty() ? 0 : 1;
    }
    const double rate = static_cast<double>(failures) / trials;
    CHECK(rate == doctest::Approx(expected).epsilon(0.021));  // +-0.015 absolute
  }
}
