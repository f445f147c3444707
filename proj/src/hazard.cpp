#include "gridres/hazard.hpp"

#include <algorithm>
#include <cmath>

#include "gridres/common.hpp"
#include "gridres/csv.hpp"
#include "gridres/rng.hpp"

namespace gridres {

int PatchGrid::index_of(const std::string& patch_id) const {
  for (int i = 0; i < static_cast<int>(patches.size()); ++i) {
    if (patches[i].id == patch_id) return i;
  }
  return -1;
}

std::string to_string(EventType type) {
  return type == EventType::Wind ? "wind" : "untyped";
}

std::vector<Violation> validate_patch_grid(const PatchGrid& grid) {
  std::vector<Violation> out;
  std::map<std::string, int> seen;
  for (const auto& p : grid.patches) {
    if (!seen.emplace(p.id, 1).second) out.push_back({p.id, "duplicate patch id"});
    if (!(p.rect.width() > 0.0) || !(p.rect.height() > 0.0)) {
      out.push_back({p.id, "degenerate patch rectangle"});
    }
  }
  return out;
}

std::vector<Violation> validate_patch_refs(const PowerNetwork& net,
                                           const PatchGrid& grid) {
  std::vector<Violation> out;
  std::map<std::string, int> ids;
  for (const auto& p : grid.patches) ids[p.id] = 1;
  for (const auto& n : net.nodes) {
    if (!ids.count(n.patch_id)) {
      out.push_back({n.id, "unknown patch '" + n.patch_id + "'"});
    }
  }
  return out;
}

SpatialStats spatial_stats(const WeatherFrame& frame) {
  if (frame.gust.empty()) throw InputError("spatial_stats: empty frame");
  std::vector<double> values;
  values.reserve(frame.gust.size());
  for (const auto& [id, g] : frame.gust) values.push_back(g);
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double idx = 0.95 * static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(idx));
  const auto hi = static_cast<std::size_t>(std::ceil(idx));
  const double frac = idx - static_cast<double>(lo);
  return {values[lo] + frac * (values[hi] - values[lo]), values[n - 1]};
}

EventType type_event(const WeatherEvent& event, const WindTypingThresholds& th) {
  if (event.frames.empty()) throw InputError("type_event: event has no frames");
  int qualifying = 0;
  int best_run = 0;
  int run = 0;
  for (const auto& frame : event.frames) {
    const auto stats = spatial_stats(frame);
    const bool hit = stats.p95 >= th.p95_gust_ms || stats.max >= th.max_gust_ms;
    if (hit) {
      ++qualifying;
      best_run = std::max(best_run, ++run);
    } else {
      run = 0;
    }
  }
  const int count = th.require_consecutive ? best_run : qualifying;
  return count >= th.min_hours ? EventType::Wind : EventType::Untyped;
}

std::vector<WeatherFrame> map_grid_to_patches(const std::vector<GridCellSeries>& cells,
                                              const PatchGrid& patches) {
  if (cells.empty()) throw InputError("map_grid_to_patches: no grid cells");
  const std::size_t hours = cells.front().gust.size();
  for (const auto& c : cells) {
    if (c.gust.size() != hours) {
      throw InputError("grid cell '" + c.cell_id + "' has inconsistent series length");
    }
  }

  std::vector<std::vector<std::pair<int, double>>> weights(patches.patches.size());
  for (std::size_t p = 0; p < patches.patches.size(); ++p) {
    double total = 0.0;
    for (int c = 0; c < static_cast<int>(cells.size()); ++c) {
      const double w = overlap_area(patches.patches[p].rect, cells[c].rect);
      if (w > 0.0) {
        weights[p].push_back({c, w});
        total += w;
      }
    }
    if (total <= 0.0) {
      throw InputError("patch '" + patches.patches[p].id +
                       "' has no overlapping grid cell");
    }
    for (auto& [c, w] : weights[p]) w /= total;
  }

  std::vector<WeatherFrame> frames(hours);
  for (std::size_t h = 0; h < hours; ++h) {
    frames[h].hour_index = static_cast<int>(h);
    for (std::size_t p = 0; p < patches.patches.size(); ++p) {
      double g = 0.0;
      for (auto [c, w] : weights[p]) g += w * cells[c].gust[h];
      frames[h].gust[patches.patches[p].id] = g;
    }
  }
  return frames;
}

WeatherEvent synth_wind_event(const SynthEventParams& params, const PatchGrid& patches,
                              uint64_t seed) {
  if (patches.patches.empty()) throw InputError("synth_wind_event: empty patch grid");
  if (params.duration_h < 1) throw InputError("synth_wind_event: duration_h must be >= 1");
  if (!(params.peak_gust_ms > 0.0)) {
    throw InputError("synth_wind_event: peak_gust_ms must be > 0");
  }
  if (params.ramp_shape != "triangular") {
    throw InputError("synth_wind_event: unknown ramp_shape '" + params.ramp_shape + "'");
  }

  rng::Stream noise(rng::substream_seed(seed, rng::kTagSynth));
  WeatherEvent event;
  event.event_id = params.event_id;
  event.start_hour = params.start_hour;
  event.hazard_window_hours = params.duration_h;

  const double half = static_cast<double>(params.duration_h) / 2.0;
  for (int h = 0; h < params.duration_h; ++h) {
    WeatherFrame frame;
    frame.hour_index = h;
    const double ramp =
        params.duration_h == 1
            ? 1.0
            : std::max(0.0, 1.0 - std::abs(static_cast<double>(h) - half) / half);
    for (const auto& patch : patches.patches) {
      const Point center{0.5 * (patch.rect.x_min + patch.rect.x_max),
                         0.5 * (patch.rect.y_min + patch.rect.y_max)};
      const double d = dist(center, params.storm_center);
      const double decay = std::exp(-0.5 * (d / params.radius_m) * (d / params.radius_m));
      const double noise_term =
          params.noise_amp_ms * (2.0 * noise.next_unit() - 1.0);
      double g = params.peak_gust_ms * ramp * decay + noise_term;
      g = std::max(0.0, snap_decimal(g, 4));
      frame.gust[patch.id] = g;
    }
    event.frames.push_back(std::move(frame));
  }
  event.event_type = type_event(event, WindTypingThresholds{});
  return event;
}

}  // namespace gridres
