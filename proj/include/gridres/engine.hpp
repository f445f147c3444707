#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gridres/flood.hpp"
#include "gridres/fragility.hpp"
#include "gridres/hazard.hpp"
#include "gridres/network.hpp"
#include "gridres/rng.hpp"

namespace gridres {

enum class RepairOrdering { Proximity, Random, Criticality, HybridDynamic };

std::string to_string(RepairOrdering ordering);
RepairOrdering repair_ordering_from_string(const std::string& s);

struct EpisodeConfig {
  int crews = 12;
  double repair_min_h = 2.0;
  double repair_max_h = 3.0;
  RepairOrdering ordering = RepairOrdering::Proximity;
  // Straight-line speed; <= 0 disables travel time entirely.
  double travel_speed_m_per_h = 30000.0;
  double w_crit = 0.4;
  double w_dist = 0.3;
  double w_backlog_base = 0.3;
  double backlog_ramp_h = 24.0;
};

struct CrewState {
  int crew_id = 0;
  Point position;
  double busy_until = 0.0;
  int assigned_line = -1;
};

struct FailureEvent {
  int hour = 0;
  std::string line_id;
  bool operator==(const FailureEvent&) const = default;
};

struct RepairEvent {
  double start_h = 0.0;
  double finish_h = 0.0;
  std::string line_id;
  int crew_id = 0;
  bool operator==(const RepairEvent&) const = default;
};

struct EpisodeResult {
  int episode_index = 0;
  uint64_t seed = 0;
  // Customers out at each integer hour; covers the hazard window plus the
  // restoration tail and ends with one final zero entry.
  std::vector<long long> outage_trajectory;
  std::vector<FailureEvent> failure_log;   // (hour, line), hour then line order
  std::vector<RepairEvent> repair_log;     // dispatch order
  // Unpowered pump ids per trajectory hour; populated when a sewage network
  // is attached.
  std::vector<std::vector<std::string>> pump_outage_trajectory;
  bool operator==(const EpisodeResult&) const = default;
};

struct EnsembleResult {
  std::vector<EpisodeResult> episodes;
  std::vector<FloodResult> floods;  // empty unless flood coupling is enabled
};

// Lines failed-and-unrepaired at hour t, reconstructed from the logs.
std::set<std::string> failed_lines_at(const EpisodeResult& result, double hour);

// Repair-policy selection over the current candidate set. `pool` holds line
// indices into the NetworkIndex; returns the chosen element of pool.
int pick_next_repair(RepairOrdering policy, const std::vector<int>& pool,
                     const CrewState& crew, const NetworkIndex& index, double hour,
                     double hazard_end_h, const std::vector<int>& feeder_backlog,
                     const EpisodeConfig& cfg, rng::Stream& stream);

// Shared immutable context for an ensemble: indexes the network, resolves
// per-line hourly gusts and fragility thresholds, and optionally attaches the
// sewage network for coupled runs. Episodes run against it concurrently.
class Simulator {
 public:
  Simulator(const PowerNetwork& net, const WeatherEvent& event, FragilityParams frag,
            EpisodeConfig cfg);

  void enable_flood(const SewageNetwork& sewage, const FloodConfig& flood_cfg);

  const NetworkIndex& index() const { return index_; }
  int hazard_window_hours() const { return hazard_hours_; }

  EpisodeResult run_episode(uint64_t seed) const;
  // Coupled variant; power results are identical to run_episode(seed).
  std::pair<EpisodeResult, FloodResult> run_coupled_episode(uint64_t seed) const;

  // Episode i uses seed mix64(base_seed ^ i); results are identical for any
  // worker count.
  EnsembleResult run_ensemble(uint64_t base_seed, int n_episodes, int workers = 1) const;

 private:
  EpisodeResult run_power_episode(uint64_t seed, FloodResult* flood_out) const;

  NetworkIndex index_;
  FragilityParams frag_;
  EpisodeConfig cfg_;
  const SewageNetwork* sewage_ = nullptr;
  FloodConfig flood_cfg_;
  int hazard_hours_ = 0;
  std::vector<double> gust_;       // [hour * lines + line]
  std::vector<double> theta_eff_;  // per line
  std::vector<int> pump_nodes_;    // node index per pump (sewage order)
};

// Spec-level conveniences; these build the Simulator internally.
EpisodeResult run_episode(const PowerNetwork& net, const WeatherEvent& event,
                          const FragilityParams& frag, const EpisodeConfig& cfg,
                          uint64_t seed);
EnsembleResult run_ensemble(const PowerNetwork& net, const WeatherEvent& event,
                            const FragilityParams& frag, const EpisodeConfig& cfg,
                            uint64_t base_seed, int n_episodes, int workers = 1,
                            const SewageNetwork* sewage = nullptr,
                            const FloodConfig* flood_cfg = nullptr);

}  // namespace gridres
