#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridres/curation.hpp"
#include "gridres/engine.hpp"
#include "gridres/fixtures.hpp"
#include "gridres/flood.hpp"
#include "gridres/fragility.hpp"
#include "gridres/hazard.hpp"

namespace gridres {

// One structured config drives every command; runs are referenced by the
// hash of the canonical config text.
struct RunConfig {
  std::string network_dir;
  std::string patches_file;  // defaults to <network_dir>/patches.csv
  std::optional<std::string> event_file;
  std::optional<SynthEventParams> synth_event;
  std::optional<TopologyMode> topology;
  FragilityParams fragility;
  EpisodeConfig episode;
  std::optional<FloodConfig> flood;
  WindTypingThresholds typing;
  CurationParams curation;
  int episodes = 256;
  uint64_t base_seed = 42;
  int workers = 1;
  std::string output_dir = "out";
  std::vector<int> ladder;
  std::vector<double> sweep;
  std::string observed_file;
  std::optional<FixtureSpec> fixture;

  // FNV-1a over the canonical serialized form.
  std::string config_hash;
};

// Loads the JSON config and applies key=value overrides (dotted paths, e.g.
// "fragility.fragility_factor=1.2"); values parse as JSON when possible.
RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides);
RunConfig parse_run_config(const std::string& json_text);
RunConfig parse_run_config_with_overrides(const std::string& json_text,
                                          const std::vector<std::string>& overrides);

std::string default_config_json();

}  // namespace gridres
