#include "gridres/io.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "gridres/common.hpp"
#include "gridres/config.hpp"
#include "gridres/csv.hpp"
#include "gridres/fixtures.hpp"
#include "gridres/timeutil.hpp"
#include "test_helpers.hpp"

namespace fs = std::filesystem;
using namespace gridres;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("gridres_test_" + std::to_string(rng::mix64(
                                  std::chrono::steady_clock::now().time_since_epoch().count())));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string str(const std::string& name = "") const {
    return name.empty() ? path.string() : (path / name).string();
  }
};

}  // namespace

TEST_CASE("network bundle round-trips through CSV") {
  TempDir dir;
  FixtureSpec spec;
  spec.seed = 99;
  const auto bundle = generate_fixture(spec);

  save_power_network(bundle.power, dir.str());
  save_sewage_network(bundle.sewage, dir.str());
  save_patch_grid(bundle.patches, dir.str("patches.csv"));

  const auto net = load_power_network(dir.str());
  const auto sewage = load_sewage_network(dir.str());
  const auto patches = load_patch_grid(dir.str("patches.csv"));
  CHECK(net == bundle.power);
  CHECK(patches == bundle.patches);
  REQUIRE(sewage.conduits.size() == bundle.sewage.conduits.size());
  for (std::size_t i = 0; i < sewage.conduits.size(); ++i) {
    CHECK(sewage.conduits[i].polyline == bundle.sewage.conduits[i].polyline);
    CHECK(sewage.conduits[i].length_m ==
          doctest::Approx(bundle.sewage.conduits[i].length_m).epsilon(1e-9));
  }
  CHECK(sewage.pumps == bundle.sewage.pumps);
}

TEST_CASE("weather events round-trip with their metadata") {
  TempDir dir;
  FixtureSpec spec;
  const auto bundle = generate_fixture(spec);
  SynthEventParams params;
  params.event_id = "roundtrip";
  params.start_hour = parse_iso_hour("2024-10-31T06:00Z");
  params.duration_h = 5;
  const auto event = synth_wind_event(params, bundle.patches, 11);

  save_weather_event(event, dir.str("weather_event.csv"));
  const auto loaded = load_weather_event(dir.str("weather_event.csv"));
  CHECK(loaded == event);
}

TEST_CASE("observed series round-trips") {
  TempDir dir;
  ObservedSeries series;
  series.hours = {100, 101, 102};
  series.per_feeder_total = {{"A", 50}, {"B", 80}};
  series.per_feeder_out = {{"A", {0, 10, 5}}, {"B", {80, 0, 2}}};
  save_observed_series(series, dir.str("observed.csv"));
  CHECK(load_observed_series(dir.str("observed.csv")) == series);
}

TEST_CASE("outage polygons round-trip ordered vertices") {
  TempDir dir;
  std::vector<OutagePolygonSnapshot> snaps(2);
  snaps[0].hour = 10;
  snaps[0].polygons = {{{0, 0}, {10, 0}, {10, 10}}};
  snaps[1].hour = 12;
  snaps[1].polygons = {{{5, 5}, {6, 5}, {6, 6}, {5, 6}}, {{0, 0}, {2, 0}, {1, 2}}};
  save_outage_polygons(snaps, dir.str("polygons.csv"));
  const auto loaded = load_outage_polygons(dir.str("polygons.csv"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0].hour == 10);
  CHECK(loaded[0].polygons == snaps[0].polygons);
  CHECK(loaded[1].polygons == snaps[1].polygons);
}

TEST_CASE("episode trajectories round-trip through episodes.csv") {
  TempDir dir;
  std::vector<EpisodeResult> episodes(2);
  episodes[0].episode_index = 0;
  episodes[0].outage_trajectory = {5, 3, 0};
  episodes[1].episode_index = 1;
  episodes[1].outage_trajectory = {0, 0};
  save_episodes_csv(episodes, dir.str("episodes.csv"));
  const auto loaded = load_episode_trajectories(dir.str("episodes.csv"));
  REQUIRE(loaded.size() == 2);
  CHECK(loaded[0] == std::vector<long long>{5, 3, 0});
  CHECK(loaded[1] == std::vector<long long>{0, 0});
}

TEST_CASE("csv errors carry file and line information") {
  TempDir dir;
  {
    std::ofstream out(dir.str("bad.csv"));
    out << "id,x_m\n";
    out << "a,1\n";
    out << "b,not_a_number\n";
  }
  CHECK_THROWS_WITH_AS(read_csv(dir.str("bad.csv"), "id,y_m"),
                       doctest::Contains("bad header"), InputError);
  const auto table = read_csv(dir.str("bad.csv"), "id,x_m");
  CHECK_THROWS_WITH_AS(
      parse_double_field(table.rows[1][1], dir.str("bad.csv"), 3, "x_m"),
      doctest::Contains(":3:"), InputError);

  {
    std::ofstream out(dir.str("short.csv"));
    out << "id,x_m\n";
    out << "only_one_field\n";
  }
  CHECK_THROWS_WITH_AS(read_csv(dir.str("short.csv"), "id,x_m"),
                       doctest::Contains(":2:"), InputError);
}

TEST_CASE("run config parses defaults, blocks, and overrides") {
  const auto base = parse_run_config(default_config_json());
  CHECK(base.episodes == 256);
  CHECK(base.fragility.fragility_factor == doctest::Approx(0.8));
  CHECK(base.episode.crews == 12);
  CHECK(base.synth_event.has_value());
  CHECK_FALSE(base.config_hash.empty());

  const auto tweaked = parse_run_config_with_overrides(
      default_config_json(),
      {"fragility.fragility_factor=1.2", "episodes=64", "episode.ordering=criticality"});
  CHECK(tweaked.fragility.fragility_factor == doctest::Approx(1.2));
  CHECK(tweaked.episodes == 64);
  CHECK(tweaked.episode.ordering == RepairOrdering::Criticality);
  CHECK(tweaked.config_hash != base.config_hash);

  SUBCASE("unknown keys are rejected by name") {
    CHECK_THROWS_WITH_AS(
        parse_run_config_with_overrides(default_config_json(), {"episode.teams=3"}),
        doctest::Contains("episode.teams"), InputError);
  }
  SUBCASE("two event sources conflict") {
    CHECK_THROWS_AS(parse_run_config_with_overrides(default_config_json(),
                                                    {"event_file=somewhere.csv"}),
                    InputError);
  }
  SUBCASE("invalid values are rejected") {
    CHECK_THROWS_AS(
        parse_run_config_with_overrides(default_config_json(), {"episodes=0"}),
        InputError);
    CHECK_THROWS_AS(parse_run_config_with_overrides(default_config_json(),
                                                    {"episode.repair_time_h=[3,2]"}),
                    InputError);
    CHECK_THROWS_AS(parse_run_config_with_overrides(default_config_json(),
                                                    {"ladder=[64,32]"}),
                    InputError);
  }
}

TEST_CASE("simulate outputs are byte-identical across repeated saves") {
  TempDir dir;
  FixtureSpec spec;
  const auto bundle = generate_fixture(spec);
  SynthEventParams params;
  params.duration_h = 6;
  params.peak_gust_ms = 31.0;
  const auto event = synth_wind_event(params, bundle.patches, 2);
  const auto ensemble =
      run_ensemble(bundle.power, event, FragilityParams{}, EpisodeConfig{}, 5, 16);

  save_episodes_csv(ensemble.episodes, dir.str("a.csv"));
  save_episodes_csv(ensemble.episodes, dir.str("b.csv"));
  std::ifstream a(dir.str("a.csv"));
  std::ifstream b(dir.str("b.csv"));
  const std::string text_a((std::istreambuf_iterator<char>(a)),
                           std::istreambuf_iterator<char>());
  const std::string text_b((std::istreambuf_iterator<char>(b)),
                           std::istreambuf_iterator<char>());
  CHECK(text_a == text_b);
  CHECK(!text_a.empty());
}
