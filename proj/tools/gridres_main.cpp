#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gridres/common.hpp"
#include "gridres/config.hpp"
#include "gridres/csv.hpp"
#include "gridres/engine.hpp"
#include "gridres/fixtures.hpp"
#include "gridres/io.hpp"
#include "gridres/metrics.hpp"
#include "gridres/timeutil.hpp"

namespace fs = std::filesystem;
using namespace gridres;

namespace {

struct GlobalFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<uint64_t> seed;
  std::optional<int> episodes;
  std::optional<int> workers;
  std::optional<std::string> output;
  bool flood = false;
};

RunConfig resolve_config(const GlobalFlags& flags) {
  RunConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = load_run_config(flags.config_path, flags.overrides);
  } else {
    cfg = parse_run_config_with_overrides(default_config_json(), flags.overrides);
  }
  if (flags.seed) cfg.base_seed = *flags.seed;
  if (flags.episodes) cfg.episodes = *flags.episodes;
  if (flags.workers) cfg.workers = *flags.workers;
  if (flags.output) cfg.output_dir = *flags.output;
  if (flags.flood && !cfg.flood) cfg.flood = FloodConfig{};
  return cfg;
}

struct RunContext {
  PowerNetwork net;
  SewageNetwork sewage;
  PatchGrid patches;
  WeatherEvent event;
  bool has_sewage = false;
};

RunContext load_context(const RunConfig& cfg, bool need_event, bool need_sewage) {
  RunContext ctx;
  if (cfg.network_dir.empty()) throw InputError("config: network_dir is required");
  ctx.net = load_power_network(cfg.network_dir);
  if (cfg.topology) ctx.net = apply_topology_assumption(std::move(ctx.net), *cfg.topology);
  ctx.patches = load_patch_grid(cfg.patches_file);

  auto refs = validate_patch_refs(ctx.net, ctx.patches);
  if (!refs.empty()) {
    throw InputError("network references unknown patches, e.g. [" +
                     refs.front().subject_id + ": " + refs.front().rule + "]");
  }

  if (need_event) {
    if (cfg.event_file) {
      ctx.event = load_weather_event(*cfg.event_file);
    } else if (cfg.synth_event) {
      ctx.event = synth_wind_event(*cfg.synth_event, ctx.patches, cfg.base_seed);
    } else {
      throw InputError("config: one of event_file / synth_event is required");
    }
  }
  if (need_sewage) {
    ctx.sewage = load_sewage_network(cfg.network_dir);
    ctx.has_sewage = true;
  }
  return ctx;
}

std::vector<SummaryMetrics> episode_summaries(const std::vector<EpisodeResult>& episodes) {
  std::vector<SummaryMetrics> out;
  out.reserve(episodes.size());
  for (const auto& ep : episodes) out.push_back(summarize(ep.outage_trajectory));
  return out;
}

struct MeanMetrics {
  double peak = 0.0;
  double duration = 0.0;
  double auc = 0.0;
};

MeanMetrics mean_metrics(const std::vector<SummaryMetrics>& metrics) {
  MeanMetrics m;
  for (const auto& s : metrics) {
    m.peak += static_cast<double>(s.peak_customers);
    m.duration += s.duration_h;
    m.auc += s.auc_customer_hours;
  }
  const auto n = static_cast<double>(metrics.size());
  m.peak /= n;
  m.duration /= n;
  m.auc /= n;
  return m;
}

int cmd_simulate(const RunConfig& cfg) {
  RunContext ctx = load_context(cfg, true, cfg.flood.has_value());
  Simulator sim(ctx.net, ctx.event, cfg.fragility, cfg.episode);
  if (cfg.flood) sim.enable_flood(ctx.sewage, *cfg.flood);

  const auto t0 = std::chrono::steady_clock::now();
  const auto result = sim.run_ensemble(cfg.base_seed, cfg.episodes, cfg.workers);
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::create_directories(cfg.output_dir);
  save_episodes_csv(result.episodes, (fs::path(cfg.output_dir) / "episodes.csv").string());
  save_repairs_csv(result.episodes, (fs::path(cfg.output_dir) / "repairs.csv").string());
  if (cfg.flood) {
    save_flood_episodes_csv(result.floods,
                            (fs::path(cfg.output_dir) / "flood_episodes.csv").string());
    save_flood_metrics_csv(result.floods,
                           (fs::path(cfg.output_dir) / "flood_metrics.csv").string());
  }

  const nlohmann::json meta = {
      {"event_id", ctx.event.event_id},
      {"episodes", cfg.episodes},
      {"base_seed", cfg.base_seed},
      {"episode_seed_rule", "mix64(base_seed xor episode_index)"},
      {"workers", cfg.workers},
      {"config_hash", cfg.config_hash},
      {"flood", cfg.flood.has_value()},
      {"wall_clock_s", wall_s},
  };
  std::ofstream meta_out(fs::path(cfg.output_dir) / "ensemble_meta.json");
  meta_out << meta.dump(2) << '\n';

  const auto means = mean_metrics(episode_summaries(result.episodes));
  std::printf("episodes=%d mean_peak=%.2f mean_duration_h=%.2f mean_auc=%.2f wall_s=%.2f\n",
              cfg.episodes, means.peak, means.duration, means.auc, wall_s);
  return 0;
}

std::vector<long long> windowed_total_trajectory(const ObservedSeries& series,
                                                 const std::optional<int64_t>& start,
                                                 const std::optional<int64_t>& end) {
  const auto totals = total_out_trajectory(series);
  std::vector<long long> out;
  for (std::size_t i = 0; i < series.hours.size(); ++i) {
    if (start && series.hours[i] < *start) continue;
    if (end && series.hours[i] > *end) continue;
    out.push_back(totals[i]);
  }
  if (out.empty()) throw InputError("observed series empty within the event window");
  return out;
}

int cmd_assess(const RunConfig& cfg, const std::string& episodes_file,
               const std::string& observed_file, const std::string& event_id,
               const std::optional<int64_t>& window_start,
               const std::optional<int64_t>& window_end) {
  const auto trajectories = load_episode_trajectories(episodes_file);
  if (trajectories.empty()) throw InputError(episodes_file + ": no episodes");
  std::vector<SummaryMetrics> sims;
  sims.reserve(trajectories.size());
  for (const auto& t : trajectories) sims.push_back(summarize(t));

  const auto series = load_observed_series(observed_file);
  const auto observed = summarize(windowed_total_trajectory(series, window_start, window_end));

  const auto report = assess_ensemble(event_id, sims, observed);
  fs::create_directories(cfg.output_dir);
  save_assessment_json(report, (fs::path(cfg.output_dir) / "assessment.json").string());
  for (const auto& m : report.metrics) {
    if (!m.assessable) {
      std::printf("%s: not assessable (observed <= 0)\n", m.metric.c_str());
    } else {
      std::printf("%s: observed=%.2f sim_mean=%.2f ratio=%.3f strict=%s pragmatic=%s\n",
                  m.metric.c_str(), m.observed, m.sim_mean, m.ratio,
                  m.strict_hit ? "hit" : "miss", m.pragmatic_hit ? "hit" : "miss");
    }
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.sweep.empty()) throw InputError("config: sweep list is required");
  if (cfg.observed_file.empty()) throw InputError("config: observed_file is required");
  RunContext ctx = load_context(cfg, true, false);
  const auto series = load_observed_series(cfg.observed_file);
  const auto observed = summarize(total_out_trajectory(series));
  if (observed.peak_customers <= 0) {
    throw InputError("observed series has no outage; sweep ratios are undefined");
  }

  std::vector<SweepRow> rows;
  for (double factor : cfg.sweep) {
    FragilityParams frag = cfg.fragility;
    frag.fragility_factor = factor;
    Simulator sim(ctx.net, ctx.event, frag, cfg.episode);
    const auto result = sim.run_ensemble(cfg.base_seed, cfg.episodes, cfg.workers);
    const auto means = mean_metrics(episode_summaries(result.episodes));
    SweepRow row;
    row.factor = factor;
    row.peak_ratio = ratio(means.peak, static_cast<double>(observed.peak_customers));
    row.duration_ratio = ratio(means.duration, observed.duration_h);
    row.auc_ratio = ratio(means.auc, observed.auc_customer_hours);
    rows.push_back(row);
    std::printf("factor=%.3f peak_ratio=%.3f duration_ratio=%.3f auc_ratio=%.3f\n",
                factor, row.peak_ratio, row.duration_ratio, row.auc_ratio);
  }
  fs::create_directories(cfg.output_dir);
  save_sweep_csv(rows, (fs::path(cfg.output_dir) / "sweep.csv").string());
  return 0;
}

int cmd_convergence(const RunConfig& cfg) {
  if (cfg.ladder.empty()) throw InputError("config: ladder is required");
  if (cfg.ladder.back() > cfg.episodes) {
    throw InputError("ladder rung " + std::to_string(cfg.ladder.back()) +
                     " exceeds configured episode budget (episodes=" +
                     std::to_string(cfg.episodes) + ")");
  }
  RunContext ctx = load_context(cfg, true, false);
  Simulator sim(ctx.net, ctx.event, cfg.fragility, cfg.episode);
  const auto result = sim.run_ensemble(cfg.base_seed, cfg.ladder.back(), cfg.workers);
  const auto sims = episode_summaries(result.episodes);

  std::map<std::string, std::vector<double>> values;
  for (const auto& s : sims) {
    values["peak"].push_back(static_cast<double>(s.peak_customers));
    values["duration"].push_back(s.duration_h);
    values["auc"].push_back(s.auc_customer_hours);
  }
  const auto report = convergence_report(cfg.ladder, values);
  fs::create_directories(cfg.output_dir);
  save_convergence_csv(report, (fs::path(cfg.output_dir) / "convergence.csv").string());
  if (report.stable_at > 0) {
    std::printf("stable_at=%d\n", report.stable_at);
  } else {
    std::printf("not stable within ladder\n");
  }
  return 0;
}

int cmd_curate(const RunConfig& cfg, const std::string& polygons_file) {
  RunContext ctx = load_context(cfg, false, false);
  const auto snapshots = load_outage_polygons(polygons_file);
  const auto series = observed_outage_series(snapshots, ctx.net);
  const auto candidates = detect_candidate_hours(series, cfg.curation.frac_threshold,
                                                 cfg.curation.min_feeders,
                                                 cfg.curation.strict_fraction);
  auto events = merge_and_filter(candidates, cfg.curation.max_gap_h,
                                 cfg.curation.min_duration_h);
  flag_systemwide_artifacts(series, events, cfg.curation.coverage_threshold);

  fs::create_directories(cfg.output_dir);
  save_observed_series(series, (fs::path(cfg.output_dir) / "observed_series.csv").string());
  save_curated_events(events, (fs::path(cfg.output_dir) / "curated_events.json").string());
  int excluded = 0;
  for (const auto& ev : events) excluded += ev.excluded ? 1 : 0;
  std::printf("candidate_hours=%zu events=%zu excluded=%d\n", candidates.size(),
              events.size(), excluded);
  return 0;
}

int cmd_type_event(const RunConfig& cfg, const std::string& event_csv,
                   const std::string& grid_cells, const std::string& grid_gusts,
                   const std::string& patches_file) {
  WeatherEvent event;
  if (!event_csv.empty()) {
    event = load_weather_event(event_csv);
  } else if (!grid_cells.empty() && !grid_gusts.empty() && !patches_file.empty()) {
    const auto patches = load_patch_grid(patches_file);
    const auto cells = load_grid_extract(grid_cells, grid_gusts);
    event.event_id = "grid-extract";
    event.frames = map_grid_to_patches(cells, patches);
    event.hazard_window_hours = static_cast<int>(event.frames.size());
  } else {
    throw InputError("type-event needs --event or (--grid-cells, --grid-gusts, --patches)");
  }
  const auto type = type_event(event, cfg.typing);
  int qualifying = 0;
  for (const auto& frame : event.frames) {
    const auto stats = spatial_stats(frame);
    if (stats.p95 >= cfg.typing.p95_gust_ms || stats.max >= cfg.typing.max_gust_ms) {
      ++qualifying;
    }
  }
  std::printf("event=%s type=%s qualifying_hours=%d frames=%zu\n",
              event.event_id.c_str(), to_string(type).c_str(), qualifying,
              event.frames.size());
  return 0;
}

int cmd_gen_fixture(const RunConfig& cfg, bool write_observed) {
  const FixtureSpec spec = cfg.fixture.value_or(FixtureSpec{});
  auto bundle = generate_fixture(spec);
  fs::create_directories(cfg.output_dir);
  save_power_network(bundle.power, cfg.output_dir);
  save_sewage_network(bundle.sewage, cfg.output_dir);
  save_patch_grid(bundle.patches, (fs::path(cfg.output_dir) / "patches.csv").string());

  if (cfg.synth_event) {
    const auto event = synth_wind_event(*cfg.synth_event, bundle.patches, cfg.base_seed);
    save_weather_event(event, (fs::path(cfg.output_dir) / "weather_event.csv").string());
    if (write_observed) {
      PowerNetwork net = bundle.power;
      if (cfg.topology) net = apply_topology_assumption(std::move(net), *cfg.topology);
      const auto series =
          generate_observed_series(net, event, cfg.fragility, cfg.episode, cfg.base_seed);
      save_observed_series(series,
                           (fs::path(cfg.output_dir) / "observed_series.csv").string());
    }
  } else if (write_observed) {
    throw InputError("--observed requires a synth_event block in the config");
  }
  std::printf("fixture: nodes=%zu lines=%zu conduits=%zu pumps=%zu patches=%zu\n",
              bundle.power.nodes.size(), bundle.power.lines.size(),
              bundle.sewage.conduits.size(), bundle.sewage.pumps.size(),
              bundle.patches.patches.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gridres: Monte Carlo resilience simulation for electric distribution "
               "networks under wind events, with coupled sewage-backup flooding"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--config", flags.config_path, "JSON run configuration");
  app.add_option("--set", flags.overrides, "Override config keys (key=value)");
  app.add_option("--seed", flags.seed, "Base seed override");
  app.add_option("--episodes", flags.episodes, "Episode count override");
  app.add_option("--workers", flags.workers, "Parallel episode workers");
  app.add_option("--output", flags.output, "Output directory override");
  app.add_flag("--flood", flags.flood, "Enable flood coupling with default parameters");

  auto* simulate = app.add_subcommand("simulate", "Run a seeded Monte Carlo ensemble");

  std::string polygons_file;
  auto* curate = app.add_subcommand("curate", "Build observed series and curated events");
  curate->add_option("--polygons", polygons_file, "outage_polygons.csv")->required();

  std::string event_csv, grid_cells, grid_gusts, patches_file;
  auto* type_ev = app.add_subcommand("type-event", "Classify an event as wind/untyped");
  type_ev->add_option("--event", event_csv, "weather_event.csv");
  type_ev->add_option("--grid-cells", grid_cells, "grid_cells.csv");
  type_ev->add_option("--grid-gusts", grid_gusts, "grid_gusts.csv");
  type_ev->add_option("--patches", patches_file, "patches.csv");

  std::string episodes_file, observed_file, event_id = "event";
  std::string window_start_text, window_end_text;
  auto* assess = app.add_subcommand("assess", "Compare an ensemble against observations");
  assess->add_option("--episodes-file", episodes_file, "episodes.csv")->required();
  assess->add_option("--observed", observed_file, "observed_series.csv")->required();
  assess->add_option("--event-id", event_id, "Event label for the report");
  assess->add_option("--window-start", window_start_text, "ISO hour, inclusive");
  assess->add_option("--window-end", window_end_text, "ISO hour, inclusive");

  auto* sweep = app.add_subcommand("sweep", "Fragility-factor sweep of mean ratios");
  auto* convergence = app.add_subcommand("convergence", "Episode-ladder convergence");

  bool write_observed = false;
  auto* gen = app.add_subcommand("gen-fixture", "Generate a synthetic instance bundle");
  gen->add_flag("--observed", write_observed,
                "Also write a pseudo-observed series from a hidden episode");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const RunConfig cfg = resolve_config(flags);
    if (simulate->parsed()) return cmd_simulate(cfg);
    if (curate->parsed()) return cmd_curate(cfg, polygons_file);
    if (type_ev->parsed()) {
      return cmd_type_event(cfg, event_csv, grid_cells, grid_gusts, patches_file);
    }
    if (assess->parsed()) {
      std::optional<int64_t> start, end;
      if (!window_start_text.empty()) start = parse_iso_hour(window_start_text);
      if (!window_end_text.empty()) end = parse_iso_hour(window_end_text);
      return cmd_assess(cfg, episodes_file, observed_file, event_id, start, end);
    }
    if (sweep->parsed()) return cmd_sweep(cfg);
    if (convergence->parsed()) return cmd_convergence(cfg);
    if (gen->parsed()) return cmd_gen_fixture(cfg, write_observed);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
