#pragma once

#include <string>
#include <vector>

#include "gridres/curation.hpp"
#include "gridres/engine.hpp"
#include "gridres/flood.hpp"
#include "gridres/hazard.hpp"
#include "gridres/metrics.hpp"
#include "gridres/network.hpp"

namespace gridres {

// Network bundle: nodes.csv, lines.csv, conduits.csv, pumps.csv (+ patches.csv).
PowerNetwork load_power_network(const std::string& dir);
void save_power_network(const PowerNetwork& net, const std::string& dir);

SewageNetwork load_sewage_network(const std::string& dir);
void save_sewage_network(const SewageNetwork& sewage, const std::string& dir);

PatchGrid load_patch_grid(const std::string& path);
void save_patch_grid(const PatchGrid& grid, const std::string& path);

// weather_event.csv with event_meta.json alongside it.
WeatherEvent load_weather_event(const std::string& csv_path);
void save_weather_event(const WeatherEvent& event, const std::string& csv_path);

// Grid extract for the cell-to-patch mapper.
std::vector<GridCellSeries> load_grid_extract(const std::string& cells_path,
                                              const std::string& gusts_path);

ObservedSeries load_observed_series(const std::string& path);
void save_observed_series(const ObservedSeries& series, const std::string& path);

std::vector<OutagePolygonSnapshot> load_outage_polygons(const std::string& path);
void save_outage_polygons(const std::vector<OutagePolygonSnapshot>& snapshots,
                          const std::string& path);

void save_curated_events(const std::vector<CuratedEvent>& events,
                         const std::string& path);

void save_episodes_csv(const std::vector<EpisodeResult>& episodes,
                       const std::string& path);
std::vector<std::vector<long long>> load_episode_trajectories(const std::string& path);

void save_repairs_csv(const std::vector<EpisodeResult>& episodes,
                      const std::string& path);

void save_flood_episodes_csv(const std::vector<FloodResult>& floods,
                             const std::string& path);
void save_flood_metrics_csv(const std::vector<FloodResult>& floods,
                            const std::string& path);

void save_assessment_json(const AssessmentReport& report, const std::string& path);
void save_deciles_csv(const std::vector<DecileRow>& rows, const std::string& path);
void save_convergence_csv(const ConvergenceReport& report, const std::string& path);

struct SweepRow {
  double factor = 0.0;
  double peak_ratio = 0.0;
  double duration_ratio = 0.0;
  double auc_ratio = 0.0;
};
void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

}  // namespace gridres
