#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gridres/geometry.hpp"
#include "gridres/network.hpp"

namespace gridres {

struct PatchGrid {
  struct Patch {
    std::string id;
    Rect rect;
    bool operator==(const Patch&) const = default;
  };
  std::vector<Patch> patches;
  bool operator==(const PatchGrid&) const = default;

  int index_of(const std::string& patch_id) const;  // -1 if absent
};

std::vector<Violation> validate_patch_grid(const PatchGrid& grid);
// Checks node patch references against the active grid.
std::vector<Violation> validate_patch_refs(const PowerNetwork& net,
                                           const PatchGrid& grid);

struct WeatherFrame {
  int hour_index = 0;
  std::map<std::string, double> gust;  // patch id -> gust m/s
  bool operator==(const WeatherFrame&) const = default;
};

enum class EventType { Wind, Untyped };

std::string to_string(EventType type);

struct WeatherEvent {
  std::string event_id;
  int64_t start_hour = 0;  // UTC hours since epoch
  std::vector<WeatherFrame> frames;
  EventType event_type = EventType::Untyped;
  int hazard_window_hours = 0;
  bool operator==(const WeatherEvent&) const = default;
};

struct WindTypingThresholds {
  double p95_gust_ms = 17.0;
  double max_gust_ms = 22.0;
  int min_hours = 2;
  // Qualifying hours need not be consecutive by default.
  bool require_consecutive = false;
};

struct SpatialStats {
  double p95 = 0.0;
  double max = 0.0;
};

// p95 uses linear interpolation between order statistics at index q*(n-1).
SpatialStats spatial_stats(const WeatherFrame& frame);

EventType type_event(const WeatherEvent& event, const WindTypingThresholds& th);

struct GridCellSeries {
  std::string cell_id;
  Rect rect;
  std::vector<double> gust;  // hourly
};

// Area-weighted mean of overlapping cell gusts per patch, one frame per hour.
std::vector<WeatherFrame> map_grid_to_patches(const std::vector<GridCellSeries>& cells,
                                              const PatchGrid& patches);

struct SynthEventParams {
  std::string event_id = "synthetic-wind";
  int64_t start_hour = 0;
  int duration_h = 12;
  double peak_gust_ms = 30.0;
  Point storm_center{5000.0, 5000.0};
  double radius_m = 6000.0;
  std::string ramp_shape = "triangular";
  double noise_amp_ms = 0.5;
};

// Deterministic synthetic event: triangular temporal ramp peaking at
// duration_h/2, Gaussian spatial decay from the storm center, seeded noise.
WeatherEvent synth_wind_event(const SynthEventParams& params, const PatchGrid& patches,
                              uint64_t seed);

}  // namespace gridres
