#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gridres/geometry.hpp"
#include "gridres/network.hpp"

namespace gridres {

struct OutagePolygonSnapshot {
  int64_t hour = 0;  // UTC hours since epoch
  std::vector<std::vector<Point>> polygons;
};

struct ObservedSeries {
  std::vector<int64_t> hours;
  std::map<std::string, std::vector<long long>> per_feeder_out;
  std::map<std::string, long long> per_feeder_total;
  bool operator==(const ObservedSeries&) const = default;
};

struct CuratedEvent {
  int64_t start_hour = 0;
  int64_t end_hour = 0;
  std::vector<int64_t> candidate_hours;
  bool excluded = false;
  std::string reason;

  int duration_h() const { return static_cast<int>(end_hour - start_hour + 1); }
  bool operator==(const CuratedEvent&) const = default;
};

struct CurationParams {
  double frac_threshold = 0.05;
  int min_feeders = 2;
  bool strict_fraction = true;  // "exceed 5%" read as strictly greater
  int max_gap_h = 3;
  int min_duration_h = 6;
  double coverage_threshold = 0.8;
};

// Customers count as out when the node position lies inside the union of the
// hour's polygons. Missing hours inside the snapshot span are zero outage.
ObservedSeries observed_outage_series(const std::vector<OutagePolygonSnapshot>& snapshots,
                                      const PowerNetwork& net);

std::vector<int64_t> detect_candidate_hours(const ObservedSeries& series,
                                            double frac_threshold = 0.05,
                                            int min_feeders = 2, bool strict = true);

// Merges candidate runs separated by at most max_gap_h non-candidate hours,
// then drops merged events shorter than min_duration_h (inclusive span).
std::vector<CuratedEvent> merge_and_filter(const std::vector<int64_t>& candidates,
                                           int max_gap_h = 3, int min_duration_h = 6);

// Flags (never deletes) events containing an hour at or above the systemwide
// coverage threshold.
void flag_systemwide_artifacts(const ObservedSeries& series,
                               std::vector<CuratedEvent>& events,
                               double coverage_threshold = 0.8);

// Total customers-out per hour, summed across feeders.
std::vector<long long> total_out_trajectory(const ObservedSeries& series);
long long total_customers(const ObservedSeries& series);

}  // namespace gridres
