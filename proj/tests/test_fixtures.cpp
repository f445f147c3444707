#include "gridres/fixtures.hpp"

#include "doctest.h"
#include "gridres/common.hpp"
#include "gridres/metrics.hpp"
#include "test_helpers.hpp"

using namespace gridres;

TEST_CASE("the smallest spec produces a valid bundle") {
  FixtureSpec spec;
  spec.feeders = 1;
  spec.nodes_per_feeder = 2;
  spec.pumps = 1;
  spec.conduit_chain_length = 1;
  const auto bundle = generate_fixture(spec);
  CHECK(validate_network(bundle.power).empty());
  CHECK(bundle.power.nodes.size() == 2);
  CHECK(bundle.power.lines.size() == 1);
  CHECK(bundle.sewage.pumps.size() == 1);
}

TEST_CASE("generation is deterministic in the spec seed") {
  FixtureSpec spec;
  spec.seed = 12345;
  const auto a = generate_fixture(spec);
  const auto b = generate_fixture(spec);
  CHECK(a.power == b.power);
  CHECK(a.sewage == b.sewage);
  CHECK(a.patches == b.patches);

  spec.seed = 54321;
  const auto c = generate_fixture(spec);
  CHECK(a.power != c.power);
}

TEST_CASE("generated bundles always validate") {
  for (uint64_t seed : {1, 2, 3, 9, 100}) {
    FixtureSpec spec;
    spec.seed = seed;
    spec.feeders = 3;
    spec.nodes_per_feeder = 40;
    spec.pumps = 3;
    const auto bundle = generate_fixture(spec);
    CHECK(validate_network(bundle.power).empty());
    CHECK(validate_sewage(bundle.sewage, &bundle.power).empty());
    CHECK(validate_patch_refs(bundle.power, bundle.patches).empty());
    CHECK(validate_patch_grid(bundle.patches).empty());
  }
}

TEST_CASE("fully underground fixtures never fail in wind") {
  FixtureSpec spec;
  spec.underground_fraction = 1.0;
  spec.pumps = 0;
  const auto bundle = generate_fixture(spec);

  SynthEventParams params;
  params.duration_h = 6;
  params.peak_gust_ms = 60.0;
  const auto event = synth_wind_event(params, bundle.patches, 3);

  const auto ensemble =
      run_ensemble(bundle.power, event, FragilityParams{}, EpisodeConfig{}, 1, 32);
  for (const auto& ep : ensemble.episodes) {
    CHECK(ep.failure_log.empty());
    CHECK(summarize(ep.outage_trajectory).peak_customers == 0);
  }
}

TEST_CASE("customer counts respect the configured range") {
  FixtureSpec spec;
  spec.customers_min = 5;
  spec.customers_max = 40;
  const auto bundle = generate_fixture(spec);
  long long total = 0;
  for (const auto& node : bundle.power.nodes) {
    if (node.kind == NodeKind::ServicePoint) {
      CHECK(node.customers >= 5);
      CHECK(node.customers <= 40);
      total += node.customers;
    } else {
      CHECK(node.customers == 0);
    }
  }
  CHECK(total > 0);
}

TEST_CASE("generate_observed_series replays one hidden episode") {
  FixtureSpec spec;
  spec.pumps = 0;
  const auto bundle = generate_fixture(spec);

  SynthEventParams params;
  params.duration_h = 8;
  params.peak_gust_ms = 32.0;
  params.start_hour = 1000;
  const auto event = synth_wind_event(params, bundle.patches, 7);

  const FragilityParams frag;
  const EpisodeConfig cfg;
  const auto series = generate_observed_series(bundle.power, event, frag, cfg, 7);

  // Equality against the stored hidden episode.
  const auto hidden = run_episode(bundle.power, event, frag, cfg,
                                  rng::substream_seed(7, rng::kTagObserved));
  REQUIRE(series.hours.size() == hidden.outage_trajectory.size());
  CHECK(series.hours.front() == 1000);
  const auto totals = total_out_trajectory(series);
  for (std::size_t t = 0; t < totals.size(); ++t) {
    CHECK(totals[t] == hidden.outage_trajectory[t]);
  }

  // Calm events give an all-zero observed series.
  SynthEventParams calm = params;
  calm.peak_gust_ms = 0.001;
  calm.noise_amp_ms = 0.0;
  const auto calm_series = generate_observed_series(
      bundle.power, synth_wind_event(calm, bundle.patches, 7), frag, cfg, 7);
  for (long long v : total_out_trajectory(calm_series)) CHECK(v == 0);
}

TEST_CASE("invalid specs are rejected") {
  FixtureSpec spec;
  spec.nodes_per_feeder = 1;
  CHECK_THROWS_AS(generate_fixture(spec), InputError);
  spec = FixtureSpec{};
  spec.underground_fraction = 1.5;
  CHECK_THROWS_AS(generate_fixture(spec), InputError);
  spec = FixtureSpec{};
  spec.customers_min = 50;
  spec.customers_max = 10;
  CHECK_THROWS_AS(generate_fixture(spec), InputError);
}
