#include "gridres/curation.hpp"

#include <algorithm>

#include "gridres/common.hpp"

namespace gridres {

ObservedSeries observed_outage_series(const std::vector<OutagePolygonSnapshot>& snapshots,
                                      const PowerNetwork& net) {
  for (const auto& snap : snapshots) {
    for (const auto& poly : snap.polygons) {
      if (poly.size() < 3) {
        throw InputError("outage polygon with fewer than 3 vertices at hour " +
                         std::to_string(snap.hour));
      }
    }
  }
  for (std::size_t i = 1; i < snapshots.size(); ++i) {
    if (snapshots[i].hour <= snapshots[i - 1].hour) {
      throw InputError("outage snapshots not sorted by timestamp");
    }
  }

  ObservedSeries series;
  for (const auto& node : net.nodes) {
    series.per_feeder_total[node.feeder_id] += node.customers;
  }
  if (snapshots.empty()) return series;

  const int64_t first = snapshots.front().hour;
  const int64_t last = snapshots.back().hour;
  std::map<int64_t, const OutagePolygonSnapshot*> by_hour;
  for (const auto& snap : snapshots) by_hour[snap.hour] = &snap;

  for (int64_t h = first; h <= last; ++h) {
    series.hours.push_back(h);
    auto it = by_hour.find(h);
    std::map<std::string, long long> out_per_feeder;
    if (it != by_hour.end()) {
      for (const auto& node : net.nodes) {
        if (node.customers == 0) continue;
        for (const auto& poly : it->second->polygons) {
          if (point_in_polygon(node.position, poly)) {
            out_per_feeder[node.feeder_id] += node.customers;
            break;
          }
        }
      }
    }
    for (const auto& [feeder, total] : series.per_feeder_total) {
      auto found = out_per_feeder.find(feeder);
      series.per_feeder_out[feeder].push_back(
          found == out_per_feeder.end() ? 0 : found->second);
    }
  }
  return series;
}

std::vector<int64_t> detect_candidate_hours(const ObservedSeries& series,
                                            double frac_threshold, int min_feeders,
                                            bool strict) {
  std::vector<int64_t> out;
  for (std::size_t i = 0; i < series.hours.size(); ++i) {
    int exceeding = 0;
    for (const auto& [feeder, counts] : series.per_feeder_out) {
      const long long total = series.per_feeder_total.at(feeder);
      if (total <= 0) continue;
      const double frac = static_cast<double>(counts[i]) / static_cast<double>(total);
      const bool hit = strict ? frac > frac_threshold : frac >= frac_threshold;
      if (hit) ++exceeding;
    }
    if (exceeding >= min_feeders) out.push_back(series.hours[i]);
  }
  return out;
}

std::vector<CuratedEvent> merge_and_filter(const std::vector<int64_t>& candidates,
                                           int max_gap_h, int min_duration_h) {
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i] <= candidates[i - 1]) {
      throw InputError("candidate hours not strictly ascending");
    }
  }
  std::vector<CuratedEvent> merged;
  for (int64_t hour : candidates) {
    if (!merged.empty() && hour - merged.back().end_hour - 1 <= max_gap_h) {
      merged.back().end_hour = hour;
      merged.back().candidate_hours.push_back(hour);
    } else {
      CuratedEvent ev;
      ev.start_hour = ev.end_hour = hour;
      ev.candidate_hours = {hour};
      merged.push_back(std::move(ev));
    }
  }
  std::vector<CuratedEvent> kept;
  for (auto& ev : merged) {
    if (ev.duration_h() >= min_duration_h) kept.push_back(std::move(ev));
  }
  return kept;
}

void flag_systemwide_artifacts(const ObservedSeries& series,
                               std::vector<CuratedEvent>& events,
                               double coverage_threshold) {
  const long long total = total_customers(series);
  if (total <= 0) return;
  const auto trajectory = total_out_trajectory(series);
  for (auto& ev : events) {
    for (std::size_t i = 0; i < series.hours.size(); ++i) {
      if (series.hours[i] < ev.start_hour || series.hours[i] > ev.end_hour) continue;
      const double coverage =
          static_cast<double>(trajectory[i]) / static_cast<double>(total);
      if (coverage >= coverage_threshold) {
        ev.excluded = true;
        ev.reason = "systemwide-artifact";
        break;
      }
    }
  }
}

std::vector<long long> total_out_trajectory(const ObservedSeries& series) {
  std::vector<long long> out(series.hours.size(), 0);
  for (const auto& [feeder, counts] : series.per_feeder_out) {
    for (std::size_t i = 0; i < counts.size(); ++i) out[i] += counts[i];
  }
  return out;
}

long long total_customers(const ObservedSeries& series) {
  long long total = 0;
  for (const auto& [feeder, n] : series.per_feeder_total) total += n;
  return total;
}

}  // namespace gridres
