#include "gridres/flood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gridres/common.hpp"

namespace gridres {

std::vector<std::string> pump_power_status(const PowerNetwork& net,
                                           const std::set<std::string>& failed_lines,
                                           const SewageNetwork& sewage) {
  NetworkIndex index(net);
  std::vector<uint8_t> failed(net.lines.size(), 0);
  for (const auto& id : failed_lines) failed[index.line_index(id)] = 1;
  std::vector<uint8_t> reached;
  index.reachable_nodes(failed, reached);

  std::vector<std::string> unpowered;
  for (const auto& pump : sewage.pumps) {
    if (!reached[index.node_index(pump.power_node_id)]) unpowered.push_back(pump.id);
  }
  std::sort(unpowered.begin(), unpowered.end());
  return unpowered;
}

FloodState advance_flood(const FloodState& state,
                         const std::set<std::string>& unpowered,
                         const std::map<std::string, int>& hours_unpowered,
                         const SewageNetwork& sewage, const FloodConfig& cfg,
                         rng::Stream& stream) {
  // Conduit -> pumps sustaining it this hour.
  std::map<std::string, std::set<std::string>> sustaining;
  for (const auto& pump_id : unpowered) {
    auto it = hours_unpowered.find(pump_id);
    const int hours = it == hours_unpowered.end() ? 0 : it->second;
    if (hours < cfg.pump_lag_h) continue;
    const double reach_m =
        cfg.upstream_rate_m_per_h * static_cast<double>(hours - cfg.pump_lag_h + 1);
    for (const auto& reach : upstream_conduits(sewage, pump_id, reach_m)) {
      sustaining[reach.conduit_id].insert(pump_id);
    }
  }

  std::set<std::string> touched;
  for (const auto& [id, pumps] : sustaining) touched.insert(id);
  for (const auto& [id, radius] : state.flooded) touched.insert(id);

  FloodState next;
  for (const auto& id : touched) {
    const auto sus = sustaining.find(id);
    const auto was = state.flooded.find(id);
    if (sus != sustaining.end()) {
      const double growth = stream.uniform(cfg.growth_min_m, cfg.growth_max_m);
      const double radius = (was == state.flooded.end() ? 0.0 : was->second) + growth;
      next.flooded[id] = radius;
      next.sustaining[id] = sus->second;
    } else {
      const double shrink = stream.uniform(cfg.recession_min_m, cfg.recession_max_m);
      const double radius = was->second - shrink;
      if (radius > 0.0) {
        next.flooded[id] = radius;
        next.sustaining[id] = {};
      }
    }
  }
  return next;
}

namespace {

struct Capsule {
  const SewageConduit* conduit;
  double radius;
  Rect bbox;  // polyline bounds inflated by the radius
};

std::vector<Capsule> collect_capsules(const FloodState& state,
                                      const SewageNetwork& sewage) {
  std::vector<Capsule> capsules;
  for (const auto& c : sewage.conduits) {
    auto it = state.flooded.find(c.id);
    if (it == state.flooded.end()) continue;
    Capsule cap{&c, it->second, {}};
    cap.bbox.x_min = cap.bbox.y_min = std::numeric_limits<double>::infinity();
    cap.bbox.x_max = cap.bbox.y_max = -std::numeric_limits<double>::infinity();
    for (const auto& p : c.polyline) {
      cap.bbox.x_min = std::min(cap.bbox.x_min, p.x - it->second);
      cap.bbox.x_max = std::max(cap.bbox.x_max, p.x + it->second);
      cap.bbox.y_min = std::min(cap.bbox.y_min, p.y - it->second);
      cap.bbox.y_max = std::max(cap.bbox.y_max, p.y + it->second);
    }
    capsules.push_back(std::move(cap));
  }
  return capsules;
}

bool in_any_capsule(Point p, const std::vector<Capsule>& capsules) {
  for (const auto& cap : capsules) {
    if (!cap.bbox.contains(p)) continue;
    if (point_polyline_distance(p, cap.conduit->polyline) <= cap.radius) return true;
  }
  return false;
}

}  // namespace

long long flooded_customers(const FloodState& state, const SewageNetwork& sewage,
                            const std::vector<std::pair<Point, long long>>& customer_points) {
  if (state.flooded.empty()) return 0;
  const auto capsules = collect_capsules(state, sewage);
  long long total = 0;
  for (const auto& [point, count] : customer_points) {
    if (in_any_capsule(point, capsules)) total += count;
  }
  return total;
}

double flooded_area(const FloodState& state, const SewageNetwork& sewage,
                    const FloodConfig& cfg) {
  if (state.flooded.empty()) return 0.0;
  if (!(cfg.raster_cell_m > 0.0)) throw InputError("raster_cell_m must be > 0");

  const auto capsules = collect_capsules(state, sewage);
  if (capsules.empty()) return 0.0;
  double x_min = std::numeric_limits<double>::infinity();
  double y_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double y_max = -std::numeric_limits<double>::infinity();
  for (const auto& cap : capsules) {
    x_min = std::min(x_min, cap.bbox.x_min);
    x_max = std::max(x_max, cap.bbox.x_max);
    y_min = std::min(y_min, cap.bbox.y_min);
    y_max = std::max(y_max, cap.bbox.y_max);
  }

  const double cell = cfg.raster_cell_m;
  // Snap the raster origin so the grid does not shift with the bounding box.
  const double ox = std::floor(x_min / cell) * cell;
  const double oy = std::floor(y_min / cell) * cell;
  const auto nx = static_cast<long long>(std::ceil((x_max - ox) / cell));
  const auto ny = static_cast<long long>(std::ceil((y_max - oy) / cell));

  long long covered = 0;
  for (long long iy = 0; iy < ny; ++iy) {
    const double cy = oy + (static_cast<double>(iy) + 0.5) * cell;
    for (long long ix = 0; ix < nx; ++ix) {
      if (in_any_capsule({ox + (static_cast<double>(ix) + 0.5) * cell, cy}, capsules)) {
        ++covered;
      }
    }
  }
  return static_cast<double>(covered) * cell * cell;
}

FloodMetrics flood_metrics(const std::vector<long long>& customers,
                           const std::vector<double>& area) {
  if (customers.size() != area.size()) {
    throw InputError("flood_metrics: trajectory length mismatch");
  }
  FloodMetrics m;
  for (long long c : customers) {
    m.customer_peak = std::max(m.customer_peak, c);
    m.customer_auc += static_cast<double>(c);
    if (c > 0) ++m.persistence_h;
  }
  for (double a : area) {
    m.area_peak = std::max(m.area_peak, a);
    m.area_auc += a;
  }
  return m;
}

}  // namespace gridres
