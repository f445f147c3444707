#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "gridres/network.hpp"
#include "gridres/rng.hpp"

namespace gridres {

struct FloodConfig {
  int pump_lag_h = 1;  // unpowered hours before upstream backup starts
  double growth_min_m = 30.0;
  double growth_max_m = 60.0;
  double upstream_rate_m_per_h = 100.0;
  double recession_min_m = 30.0;
  double recession_max_m = 60.0;
  double raster_cell_m = 10.0;
};

struct FloodState {
  std::map<std::string, double> flooded;  // conduit id -> buffer radius m
  // Failed pumps currently sustaining each flooded conduit; empty only while
  // the conduit is receding.
  std::map<std::string, std::set<std::string>> sustaining;

  bool empty() const { return flooded.empty(); }
  bool operator==(const FloodState&) const = default;
};

struct FloodMetrics {
  long long customer_peak = 0;
  int persistence_h = 0;
  double customer_auc = 0.0;
  double area_peak = 0.0;
  double area_auc = 0.0;
  bool operator==(const FloodMetrics&) const = default;
};

struct FloodResult {
  std::vector<long long> flooded_customers_trajectory;
  std::vector<double> flooded_area_trajectory;
  FloodMetrics metrics;
  bool operator==(const FloodResult&) const = default;
};

// Pumps whose power node has no intact path to its feeder root. Sorted ids.
std::vector<std::string> pump_power_status(const PowerNetwork& net,
                                           const std::set<std::string>& failed_lines,
                                           const SewageNetwork& sewage);

// One hour of flood dynamics: pumps unpowered past the lag flood their
// upstream reach (rate x hours past lag), sustained conduits grow by a
// uniform draw, unsustained conduits recede and drop out at radius <= 0.
// Exactly one draw per touched conduit, in sorted conduit-id order.
FloodState advance_flood(const FloodState& state,
                         const std::set<std::string>& unpowered,
                         const std::map<std::string, int>& hours_unpowered,
                         const SewageNetwork& sewage, const FloodConfig& cfg,
                         rng::Stream& stream);

// Customers whose point lies within any flooded conduit's capsule
// (distance to the conduit polyline <= its radius). Union semantics.
long long flooded_customers(const FloodState& state, const SewageNetwork& sewage,
                            const std::vector<std::pair<Point, long long>>& customer_points);

// Area of the union of capsules by cell-center rasterization over the flooded
// bounding box. Error is O(perimeter x cell size).
double flooded_area(const FloodState& state, const SewageNetwork& sewage,
                    const FloodConfig& cfg);

FloodMetrics flood_metrics(const std::vector<long long>& customers,
                           const std::vector<double>& area);

}  // namespace gridres
