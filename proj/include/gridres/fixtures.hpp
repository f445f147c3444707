#pragma once

#include <cstdint>

#include "gridres/curation.hpp"
#include "gridres/engine.hpp"
#include "gridres/hazard.hpp"
#include "gridres/network.hpp"

namespace gridres {

// Deterministic synthetic instance generator. Stands in for proprietary
// network and outage data so every property and acceptance test runs at desk
// scale. Coordinates live on a fixed 10 km x 10 km plane.
struct FixtureSpec {
  int feeders = 4;
  int nodes_per_feeder = 60;
  long long customers_min = 5;
  long long customers_max = 40;
  double underground_fraction = 0.1;
  double vegetation_min = 0.0;
  double vegetation_max = 1.0;
  int pumps = 2;
  // Conduits per pump chain, including the lift conduit.
  int conduit_chain_length = 4;
  int patch_rows = 4;
  int patch_cols = 4;
  uint64_t seed = 1;
};

struct FixtureBundle {
  PowerNetwork power;
  SewageNetwork sewage;
  PatchGrid patches;
};

constexpr double kFixtureDomainM = 10000.0;

FixtureBundle generate_fixture(const FixtureSpec& spec);

// One hidden episode exported as the "observed" sample, keyed by an
// independent seed, so calibration-style experiments know the generating
// parameters.
ObservedSeries generate_observed_series(const PowerNetwork& net,
                                        const WeatherEvent& event,
                                        const FragilityParams& frag,
                                        const EpisodeConfig& cfg, uint64_t seed);

}  // namespace gridres
