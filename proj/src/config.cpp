#include "gridres/config.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "json.hpp"

#include "gridres/common.hpp"
#include "gridres/timeutil.hpp"

using nlohmann::json;

namespace gridres {

namespace {

uint64_t fnv1a64(const std::string& text) {
  uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return hash;
}

[[noreturn]] void unknown_key(const std::string& scope, const std::string& key) {
  throw InputError("unknown config key '" + (scope.empty() ? key : scope + "." + key) +
                   "'");
}

void check_keys(const json& obj, const std::string& scope,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) {
      if (key == a) ok = true;
    }
    if (!ok) unknown_key(scope, key);
  }
}

template <typename T>
void read_field(const json& obj, const char* key, T& out) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  try {
    out = it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config key '") + key + "' has the wrong type");
  }
}

void read_range(const json& obj, const char* key, double& lo, double& hi) {
  auto it = obj.find(key);
  if (it == obj.end()) return;
  if (!it->is_array() || it->size() != 2) {
    throw InputError(std::string("config key '") + key + "' must be [min, max]");
  }
  lo = (*it)[0].get<double>();
  hi = (*it)[1].get<double>();
}

FragilityParams parse_fragility(const json& obj) {
  check_keys(obj, "fragility",
             {"theta0_ms", "slope_ms", "fragility_factor", "veg_sensitivity", "p_cap"});
  FragilityParams p;
  read_field(obj, "theta0_ms", p.theta0_ms);
  read_field(obj, "slope_ms", p.slope_ms);
  read_field(obj, "fragility_factor", p.fragility_factor);
  read_field(obj, "veg_sensitivity", p.veg_sensitivity);
  read_field(obj, "p_cap", p.p_cap);
  if (!(p.theta0_ms > 0) || !(p.slope_ms > 0) || !(p.fragility_factor > 0)) {
    throw InputError("fragility: theta0_ms, slope_ms, fragility_factor must be > 0");
  }
  if (p.veg_sensitivity < 0 || p.veg_sensitivity >= 1) {
    throw InputError("fragility: veg_sensitivity must be in [0,1)");
  }
  if (p.p_cap < 0 || p.p_cap > 1) throw InputError("fragility: p_cap must be in [0,1]");
  return p;
}

EpisodeConfig parse_episode(const json& obj) {
  check_keys(obj, "episode",
             {"crews", "repair_time_h", "ordering", "travel_speed_m_per_h",
              "hybrid_weights", "backlog_ramp_h"});
  EpisodeConfig cfg;
  read_field(obj, "crews", cfg.crews);
  read_range(obj, "repair_time_h", cfg.repair_min_h, cfg.repair_max_h);
  if (obj.contains("ordering")) {
    cfg.ordering = repair_ordering_from_string(obj.at("ordering").get<std::string>());
  }
  read_field(obj, "travel_speed_m_per_h", cfg.travel_speed_m_per_h);
  if (obj.contains("hybrid_weights")) {
    const auto& w = obj.at("hybrid_weights");
    if (!w.is_array() || w.size() != 3) {
      throw InputError("episode.hybrid_weights must be [w_crit, w_dist, w_backlog_base]");
    }
    cfg.w_crit = w[0].get<double>();
    cfg.w_dist = w[1].get<double>();
    cfg.w_backlog_base = w[2].get<double>();
  }
  read_field(obj, "backlog_ramp_h", cfg.backlog_ramp_h);
  if (cfg.crews < 1) throw InputError("episode.crews must be >= 1");
  if (cfg.repair_min_h > cfg.repair_max_h) {
    throw InputError("episode.repair_time_h must satisfy min <= max");
  }
  if (cfg.w_crit < 0 || cfg.w_dist < 0 || cfg.w_backlog_base < 0) {
    throw InputError("episode.hybrid_weights must be non-negative");
  }
  if (!(cfg.backlog_ramp_h > 0)) throw InputError("episode.backlog_ramp_h must be > 0");
  return cfg;
}

FloodConfig parse_flood(const json& obj) {
  check_keys(obj, "flood",
             {"pump_lag_h", "growth_m", "upstream_rate_m_per_h", "recession_m",
              "raster_cell_m"});
  FloodConfig cfg;
  read_field(obj, "pump_lag_h", cfg.pump_lag_h);
  read_range(obj, "growth_m", cfg.growth_min_m, cfg.growth_max_m);
  read_field(obj, "upstream_rate_m_per_h", cfg.upstream_rate_m_per_h);
  read_range(obj, "recession_m", cfg.recession_min_m, cfg.recession_max_m);
  read_field(obj, "raster_cell_m", cfg.raster_cell_m);
  if (cfg.pump_lag_h < 0) throw InputError("flood.pump_lag_h must be >= 0");
  if (cfg.growth_min_m > cfg.growth_max_m || cfg.recession_min_m > cfg.recession_max_m) {
    throw InputError("flood growth/recession ranges must satisfy min <= max");
  }
  if (!(cfg.upstream_rate_m_per_h > 0)) {
    throw InputError("flood.upstream_rate_m_per_h must be > 0");
  }
  if (!(cfg.raster_cell_m > 0)) throw InputError("flood.raster_cell_m must be > 0");
  return cfg;
}

SynthEventParams parse_synth_event(const json& obj) {
  check_keys(obj, "synth_event",
             {"event_id", "start_time", "duration_h", "peak_gust_ms", "storm_center",
              "radius_m", "ramp_shape", "noise_amp_ms"});
  SynthEventParams p;
  read_field(obj, "event_id", p.event_id);
  if (obj.contains("start_time")) {
    p.start_hour = parse_iso_hour(obj.at("start_time").get<std::string>());
  }
  read_field(obj, "duration_h", p.duration_h);
  read_field(obj, "peak_gust_ms", p.peak_gust_ms);
  if (obj.contains("storm_center")) {
    const auto& c = obj.at("storm_center");
    if (!c.is_array() || c.size() != 2) {
      throw InputError("synth_event.storm_center must be [x, y]");
    }
    p.storm_center = {c[0].get<double>(), c[1].get<double>()};
  }
  read_field(obj, "radius_m", p.radius_m);
  read_field(obj, "ramp_shape", p.ramp_shape);
  read_field(obj, "noise_amp_ms", p.noise_amp_ms);
  if (p.duration_h < 1) throw InputError("synth_event.duration_h must be >= 1");
  if (!(p.peak_gust_ms > 0)) throw InputError("synth_event.peak_gust_ms must be > 0");
  if (!(p.radius_m > 0)) throw InputError("synth_event.radius_m must be > 0");
  if (p.noise_amp_ms < 0) throw InputError("synth_event.noise_amp_ms must be >= 0");
  return p;
}

WindTypingThresholds parse_typing(const json& obj) {
  check_keys(obj, "typing",
             {"p95_gust_ms", "max_gust_ms", "min_hours", "require_consecutive"});
  WindTypingThresholds th;
  read_field(obj, "p95_gust_ms", th.p95_gust_ms);
  read_field(obj, "max_gust_ms", th.max_gust_ms);
  read_field(obj, "min_hours", th.min_hours);
  read_field(obj, "require_consecutive", th.require_consecutive);
  if (!(th.p95_gust_ms > 0) || !(th.max_gust_ms > 0) || th.min_hours < 1) {
    throw InputError("typing thresholds must be positive");
  }
  return th;
}

CurationParams parse_curation(const json& obj) {
  check_keys(obj, "curation",
             {"frac_threshold", "min_feeders", "strict_fraction", "max_gap_h",
              "min_duration_h", "coverage_threshold"});
  CurationParams p;
  read_field(obj, "frac_threshold", p.frac_threshold);
  read_field(obj, "min_feeders", p.min_feeders);
  read_field(obj, "strict_fraction", p.strict_fraction);
  read_field(obj, "max_gap_h", p.max_gap_h);
  read_field(obj, "min_duration_h", p.min_duration_h);
  read_field(obj, "coverage_threshold", p.coverage_threshold);
  return p;
}

FixtureSpec parse_fixture(const json& obj) {
  check_keys(obj, "fixture",
             {"feeders", "nodes_per_feeder", "customers_range", "underground_fraction",
              "vegetation_range", "pumps", "conduit_chain_length", "patch_rows",
              "patch_cols", "seed"});
  FixtureSpec spec;
  read_field(obj, "feeders", spec.feeders);
  read_field(obj, "nodes_per_feeder", spec.nodes_per_feeder);
  if (obj.contains("customers_range")) {
    const auto& r = obj.at("customers_range");
    if (!r.is_array() || r.size() != 2) {
      throw InputError("fixture.customers_range must be [min, max]");
    }
    spec.customers_min = r[0].get<long long>();
    spec.customers_max = r[1].get<long long>();
  }
  read_field(obj, "underground_fraction", spec.underground_fraction);
  double veg_lo = spec.vegetation_min, veg_hi = spec.vegetation_max;
  read_range(obj, "vegetation_range", veg_lo, veg_hi);
  spec.vegetation_min = veg_lo;
  spec.vegetation_max = veg_hi;
  read_field(obj, "pumps", spec.pumps);
  read_field(obj, "conduit_chain_length", spec.conduit_chain_length);
  read_field(obj, "patch_rows", spec.patch_rows);
  read_field(obj, "patch_cols", spec.patch_cols);
  read_field(obj, "seed", spec.seed);
  return spec;
}

json apply_override(json root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw InputError("--set expects key=value, got '" + assignment + "'");
  }
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare strings stay strings
  }

  json* cursor = &root;
  std::istringstream keys(path);
  std::string key;
  std::vector<std::string> parts;
  while (std::getline(keys, key, '.')) parts.push_back(key);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    cursor = &(*cursor)[parts[i]];
  }
  (*cursor)[parts.back()] = std::move(value);
  return root;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  check_keys(root, "",
             {"network_dir", "patches_file", "event_file", "synth_event", "topology",
              "fragility", "episode", "flood", "typing", "curation", "episodes",
              "base_seed", "workers", "output_dir", "ladder", "sweep", "observed_file",
              "fixture"});

  RunConfig cfg;
  read_field(root, "network_dir", cfg.network_dir);
  read_field(root, "patches_file", cfg.patches_file);
  if (cfg.patches_file.empty() && !cfg.network_dir.empty()) {
    cfg.patches_file = cfg.network_dir + "/patches.csv";
  }
  if (root.contains("event_file")) {
    cfg.event_file = root.at("event_file").get<std::string>();
  }
  if (root.contains("synth_event")) {
    cfg.synth_event = parse_synth_event(root.at("synth_event"));
  }
  if (cfg.event_file.has_value() && cfg.synth_event.has_value()) {
    throw InputError("config: exactly one of event_file / synth_event is allowed");
  }
  if (root.contains("topology")) {
    cfg.topology = topology_mode_from_string(root.at("topology").get<std::string>());
  }
  if (root.contains("fragility")) cfg.fragility = parse_fragility(root.at("fragility"));
  if (root.contains("episode")) cfg.episode = parse_episode(root.at("episode"));
  if (root.contains("flood")) cfg.flood = parse_flood(root.at("flood"));
  if (root.contains("typing")) cfg.typing = parse_typing(root.at("typing"));
  if (root.contains("curation")) cfg.curation = parse_curation(root.at("curation"));
  read_field(root, "episodes", cfg.episodes);
  read_field(root, "base_seed", cfg.base_seed);
  read_field(root, "workers", cfg.workers);
  read_field(root, "output_dir", cfg.output_dir);
  read_field(root, "ladder", cfg.ladder);
  read_field(root, "sweep", cfg.sweep);
  read_field(root, "observed_file", cfg.observed_file);
  if (root.contains("fixture")) cfg.fixture = parse_fixture(root.at("fixture"));

  if (cfg.episodes < 1) throw InputError("config: episodes must be >= 1");
  if (cfg.workers < 1) throw InputError("config: workers must be >= 1");
  for (std::size_t i = 1; i < cfg.ladder.size(); ++i) {
    if (cfg.ladder[i] <= cfg.ladder[i - 1]) {
      throw InputError("config: ladder must be strictly ascending");
    }
  }

  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(fnv1a64(root.dump())));
  cfg.config_hash = hash;
  return cfg;
}

RunConfig parse_run_config_with_overrides(const std::string& json_text,
                                          const std::vector<std::string>& overrides) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  for (const auto& assignment : overrides) {
    root = apply_override(std::move(root), assignment);
  }
  return parse_run_config(root.dump());
}

RunConfig load_run_config(const std::string& path,
                          const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open config file");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_run_config_with_overrides(text, overrides);
}

std::string default_config_json() {
  const json root = {
      {"network_dir", "fixture"},
      {"synth_event",
       {{"event_id", "synthetic-wind"},
        {"start_time", "2023-03-01T00:00Z"},
        {"duration_h", 12},
        {"peak_gust_ms", 30.0},
        {"storm_center", {5000.0, 5000.0}},
        {"radius_m", 6000.0},
        {"ramp_shape", "triangular"},
        {"noise_amp_ms", 0.5}}},
      {"fragility",
       {{"theta0_ms", 30.0},
        {"slope_ms", 3.0},
        {"fragility_factor", 0.8},
        {"veg_sensitivity", 0.2},
        {"p_cap", 0.95}}},
      {"episode",
       {{"crews", 12},
        {"repair_time_h", {2.0, 3.0}},
        {"ordering", "proximity"},
        {"travel_speed_m_per_h", 30000.0},
        {"hybrid_weights", {0.4, 0.3, 0.3}},
        {"backlog_ramp_h", 24.0}}},
      {"episodes", 256},
      {"base_seed", 42},
      {"workers", 1},
      {"output_dir", "out"},
  };
  return root.dump(2);
}

}  // namespace gridres
