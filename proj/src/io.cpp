#include "gridres/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "json.hpp"

#include "gridres/common.hpp"
#include "gridres/csv.hpp"
#include "gridres/timeutil.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gridres {

namespace {

std::ofstream open_out(const std::string& path) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot open for writing");
  return out;
}

std::vector<Point> parse_polyline(const std::string& text, const std::string& path,
                                  std::size_t line_no) {
  std::vector<Point> points;
  std::string token;
  auto flush = [&]() {
    if (token.empty()) return;
    double x = 0.0, y = 0.0;
    if (std::sscanf(token.c_str(), "%lf %lf", &x, &y) != 2) {
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": invalid polyline point '" + token + "'");
    }
    points.push_back({x, y});
    token.clear();
  };
  for (char c : text) {
    if (c == ';') {
      flush();
    } else {
      token.push_back(c);
    }
  }
  flush();
  return points;
}

std::string format_polyline(const std::vector<Point>& points) {
  std::string out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0) out += ";";
    out += fmt_double(points[i].x, 3) + " " + fmt_double(points[i].y, 3);
  }
  return out;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return j;
}

}  // namespace

PowerNetwork load_power_network(const std::string& dir) {
  PowerNetwork net;
  const std::string nodes_path = (fs::path(dir) / "nodes.csv").string();
  auto nodes = read_csv(nodes_path, "id,x_m,y_m,feeder_id,customers,patch_id,kind");
  std::size_t line_no = 1;
  for (const auto& row : nodes.rows) {
    ++line_no;
    PowerNode n;
    n.id = row[0];
    n.position = {parse_double_field(row[1], nodes_path, line_no, "x_m"),
                  parse_double_field(row[2], nodes_path, line_no, "y_m")};
    n.feeder_id = row[3];
    n.customers = parse_int_field(row[4], nodes_path, line_no, "customers");
    n.patch_id = row[5];
    try {
      n.kind = node_kind_from_string(row[6]);
    } catch (const InputError& e) {
      throw InputError(nodes_path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (n.kind == NodeKind::SubstationRoot) net.feeders[n.feeder_id] = n.id;
    net.nodes.push_back(std::move(n));
  }

  const std::string lines_path = (fs::path(dir) / "lines.csv").string();
  auto lines = read_csv(lines_path,
                        "id,from_node,to_node,length_m,overhead,vegetation,"
                        "service_drop,feeder_id");
  line_no = 1;
  for (const auto& row : lines.rows) {
    ++line_no;
    PowerLine l;
    l.id = row[0];
    l.from_node = row[1];
    l.to_node = row[2];
    l.length_m = parse_double_field(row[3], lines_path, line_no, "length_m");
    l.overhead = parse_bool_field(row[4], lines_path, line_no, "overhead");
    l.vegetation = parse_double_field(row[5], lines_path, line_no, "vegetation");
    l.service_drop = parse_bool_field(row[6], lines_path, line_no, "service_drop");
    l.feeder_id = row[7];
    net.lines.push_back(std::move(l));
  }
  return net;
}

void save_power_network(const PowerNetwork& net, const std::string& dir) {
  auto nodes = open_out((fs::path(dir) / "nodes.csv").string());
  nodes << "id,x_m,y_m,feeder_id,customers,patch_id,kind\n";
  for (const auto& n : net.nodes) {
    nodes << n.id << ',' << fmt_double(n.position.x, 3) << ','
          << fmt_double(n.position.y, 3) << ',' << n.feeder_id << ',' << n.customers
          << ',' << n.patch_id << ',' << to_string(n.kind) << '\n';
  }
  auto lines = open_out((fs::path(dir) / "lines.csv").string());
  lines << "id,from_node,to_node,length_m,overhead,vegetation,service_drop,feeder_id\n";
  for (const auto& l : net.lines) {
    lines << l.id << ',' << l.from_node << ',' << l.to_node << ','
          << fmt_double(l.length_m, 3) << ',' << (l.overhead ? "true" : "false") << ','
          << fmt_double(l.vegetation, 4) << ',' << (l.service_drop ? "true" : "false")
          << ',' << l.feeder_id << '\n';
  }
}

SewageNetwork load_sewage_network(const std::string& dir) {
  SewageNetwork sewage;
  const std::string conduits_path = (fs::path(dir) / "conduits.csv").string();
  auto conduits = read_csv(conduits_path, "id,polyline_wkt_like,downstream_id");
  std::size_t line_no = 1;
  for (const auto& row : conduits.rows) {
    ++line_no;
    SewageConduit c;
    c.id = row[0];
    c.polyline = parse_polyline(row[1], conduits_path, line_no);
    if (c.polyline.size() < 2) {
      throw InputError(conduits_path + ":" + std::to_string(line_no) +
                       ": polyline needs at least 2 points");
    }
    c.downstream_id = row[2];
    c.length_m = polyline_length(c.polyline);
    sewage.conduits.push_back(std::move(c));
  }

  const std::string pumps_path = (fs::path(dir) / "pumps.csv").string();
  auto pumps = read_csv(pumps_path, "id,x_m,y_m,power_node_id,lift_conduit_id");
  line_no = 1;
  for (const auto& row : pumps.rows) {
    ++line_no;
    SewagePump p;
    p.id = row[0];
    p.position = {parse_double_field(row[1], pumps_path, line_no, "x_m"),
                  parse_double_field(row[2], pumps_path, line_no, "y_m")};
    p.power_node_id = row[3];
    p.lift_conduit_id = row[4];
    sewage.pumps.push_back(std::move(p));
  }
  return sewage;
}

void save_sewage_network(const SewageNetwork& sewage, const std::string& dir) {
  auto conduits = open_out((fs::path(dir) / "conduits.csv").string());
  conduits << "id,polyline_wkt_like,downstream_id\n";
  for (const auto& c : sewage.conduits) {
    conduits << c.id << ',' << format_polyline(c.polyline) << ',' << c.downstream_id
             << '\n';
  }
  auto pumps = open_out((fs::path(dir) / "pumps.csv").string());
  pumps << "id,x_m,y_m,power_node_id,lift_conduit_id\n";
  for (const auto& p : sewage.pumps) {
    pumps << p.id << ',' << fmt_double(p.position.x, 3) << ','
          << fmt_double(p.position.y, 3) << ',' << p.power_node_id << ','
          << p.lift_conduit_id << '\n';
  }
}

PatchGrid load_patch_grid(const std::string& path) {
  PatchGrid grid;
  auto table = read_csv(path, "patch_id,x_min,y_min,x_max,y_max");
  std::size_t line_no = 1;
  for (const auto& row : table.rows) {
    ++line_no;
    PatchGrid::Patch p;
    p.id = row[0];
    p.rect = {parse_double_field(row[1], path, line_no, "x_min"),
              parse_double_field(row[2], path, line_no, "y_min"),
              parse_double_field(row[3], path, line_no, "x_max"),
              parse_double_field(row[4], path, line_no, "y_max")};
    grid.patches.push_back(std::move(p));
  }
  auto violations = validate_patch_grid(grid);
  if (!violations.empty()) {
    throw InputError(path + ": invalid patch grid [" + violations.front().subject_id +
                     ": " + violations.front().rule + "]");
  }
  return grid;
}

void save_patch_grid(const PatchGrid& grid, const std::string& path) {
  auto out = open_out(path);
  out << "patch_id,x_min,y_min,x_max,y_max\n";
  for (const auto& p : grid.patches) {
    out << p.id << ',' << fmt_double(p.rect.x_min, 3) << ',' << fmt_double(p.rect.y_min, 3)
        << ',' << fmt_double(p.rect.x_max, 3) << ',' << fmt_double(p.rect.y_max, 3)
        << '\n';
  }
}

WeatherEvent load_weather_event(const std::string& csv_path) {
  const fs::path meta_path = fs::path(csv_path).parent_path() / "event_meta.json";
  const json meta = load_json_file(meta_path.string());
  WeatherEvent event;
  try {
    event.event_id = meta.at("event_id").get<std::string>();
    event.start_hour = parse_iso_hour(meta.at("start_time").get<std::string>());
    event.hazard_window_hours = meta.at("hazard_window_hours").get<int>();
  } catch (const json::exception& e) {
    throw InputError(meta_path.string() + ": " + e.what());
  }
  if (event.hazard_window_hours < 1) {
    throw InputError(meta_path.string() + ": hazard_window_hours must be >= 1");
  }

  auto table = read_csv(csv_path, "hour_index,patch_id,gust_ms");
  event.frames.resize(event.hazard_window_hours);
  for (int h = 0; h < event.hazard_window_hours; ++h) event.frames[h].hour_index = h;
  std::size_t line_no = 1;
  for (const auto& row : table.rows) {
    ++line_no;
    const long long h = parse_int_field(row[0], csv_path, line_no, "hour_index");
    if (h < 0 || h >= event.hazard_window_hours) {
      throw InputError(csv_path + ":" + std::to_string(line_no) +
                       ": hour_index outside hazard window");
    }
    const double gust = parse_double_field(row[2], csv_path, line_no, "gust_ms");
    if (gust < 0.0) {
      throw InputError(csv_path + ":" + std::to_string(line_no) + ": negative gust");
    }
    event.frames[h].gust[row[1]] = gust;
  }
  for (const auto& frame : event.frames) {
    if (frame.gust.empty()) {
      throw InputError(csv_path + ": hour " + std::to_string(frame.hour_index) +
                       " has no gust rows");
    }
  }
  event.event_type = type_event(event, WindTypingThresholds{});
  return event;
}

void save_weather_event(const WeatherEvent& event, const std::string& csv_path) {
  auto out = open_out(csv_path);
  out << "hour_index,patch_id,gust_ms\n";
  for (const auto& frame : event.frames) {
    for (const auto& [patch, gust] : frame.gust) {
      out << frame.hour_index << ',' << patch << ',' << fmt_double(gust, 4) << '\n';
    }
  }
  const json meta = {
      {"event_id", event.event_id},
      {"start_time", format_iso_hour(event.start_hour)},
      {"hazard_window_hours", event.hazard_window_hours},
  };
  auto meta_out =
      open_out((fs::path(csv_path).parent_path() / "event_meta.json").string());
  meta_out << meta.dump(2) << '\n';
}

std::vector<GridCellSeries> load_grid_extract(const std::string& cells_path,
                                              const std::string& gusts_path) {
  auto cells_table = read_csv(cells_path, "cell_id,x_min,y_min,x_max,y_max");
  std::vector<GridCellSeries> cells;
  std::map<std::string, int> by_id;
  std::size_t line_no = 1;
  for (const auto& row : cells_table.rows) {
    ++line_no;
    GridCellSeries cell;
    cell.cell_id = row[0];
    cell.rect = {parse_double_field(row[1], cells_path, line_no, "x_min"),
                 parse_double_field(row[2], cells_path, line_no, "y_min"),
                 parse_double_field(row[3], cells_path, line_no, "x_max"),
                 parse_double_field(row[4], cells_path, line_no, "y_max")};
    by_id[cell.cell_id] = static_cast<int>(cells.size());
    cells.push_back(std::move(cell));
  }

  auto gusts_table = read_csv(gusts_path, "hour_index,cell_id,gust_ms");
  std::map<int, std::map<std::string, double>> per_hour;
  line_no = 1;
  for (const auto& row : gusts_table.rows) {
    ++line_no;
    const long long h = parse_int_field(row[0], gusts_path, line_no, "hour_index");
    if (!by_id.count(row[1])) {
      throw InputError(gusts_path + ":" + std::to_string(line_no) +
                       ": unknown cell '" + row[1] + "'");
    }
    per_hour[static_cast<int>(h)][row[1]] =
        parse_double_field(row[2], gusts_path, line_no, "gust_ms");
  }
  const int hours = per_hour.empty() ? 0 : per_hour.rbegin()->first + 1;
  for (auto& cell : cells) cell.gust.assign(hours, 0.0);
  for (const auto& [h, row] : per_hour) {
    for (const auto& [cell_id, gust] : row) cells[by_id[cell_id]].gust[h] = gust;
  }
  return cells;
}

ObservedSeries load_observed_series(const std::string& path) {
  auto table = read_csv(path, "timestamp,feeder_id,customers_out,feeder_total");
  ObservedSeries series;
  std::map<int64_t, std::map<std::string, long long>> out_by_hour;
  std::size_t line_no = 1;
  for (const auto& row : table.rows) {
    ++line_no;
    int64_t hour = 0;
    try {
      hour = parse_iso_hour(row[0]);
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    out_by_hour[hour][row[1]] = parse_int_field(row[2], path, line_no, "customers_out");
    series.per_feeder_total[row[1]] =
        parse_int_field(row[3], path, line_no, "feeder_total");
  }
  for (const auto& [hour, feeders] : out_by_hour) series.hours.push_back(hour);
  for (const auto& [feeder, total] : series.per_feeder_total) {
    auto& counts = series.per_feeder_out[feeder];
    counts.reserve(series.hours.size());
    for (int64_t hour : series.hours) {
      const auto& feeders = out_by_hour.at(hour);
      auto it = feeders.find(feeder);
      counts.push_back(it == feeders.end() ? 0 : it->second);
    }
  }
  return series;
}

void save_observed_series(const ObservedSeries& series, const std::string& path) {
  auto out = open_out(path);
  out << "timestamp,feeder_id,customers_out,feeder_total\n";
  for (std::size_t i = 0; i < series.hours.size(); ++i) {
    for (const auto& [feeder, counts] : series.per_feeder_out) {
      out << format_iso_hour(series.hours[i]) << ',' << feeder << ',' << counts[i]
          << ',' << series.per_feeder_total.at(feeder) << '\n';
    }
  }
}

std::vector<OutagePolygonSnapshot> load_outage_polygons(const std::string& path) {
  auto table = read_csv(path, "timestamp,polygon_id,vertex_index,x_m,y_m");
  // hour -> polygon id -> (vertex index, point)
  std::map<int64_t, std::map<std::string, std::vector<std::pair<long long, Point>>>> acc;
  std::size_t line_no = 1;
  for (const auto& row : table.rows) {
    ++line_no;
    int64_t hour = 0;
    try {
      hour = parse_iso_hour(row[0]);
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    const long long vertex = parse_int_field(row[2], path, line_no, "vertex_index");
    const Point p{parse_double_field(row[3], path, line_no, "x_m"),
                  parse_double_field(row[4], path, line_no, "y_m")};
    acc[hour][row[1]].push_back({vertex, p});
  }

  std::vector<OutagePolygonSnapshot> snapshots;
  for (auto& [hour, polygons] : acc) {
    OutagePolygonSnapshot snap;
    snap.hour = hour;
    for (auto& [polygon_id, vertices] : polygons) {
      std::sort(vertices.begin(), vertices.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Point> ring;
      ring.reserve(vertices.size());
      for (const auto& [idx, p] : vertices) ring.push_back(p);
      if (ring.size() < 3) {
        throw InputError(path + ": polygon '" + polygon_id + "' at " +
                         format_iso_hour(hour) + " has fewer than 3 vertices");
      }
      snap.polygons.push_back(std::move(ring));
    }
    snapshots.push_back(std::move(snap));
  }
  return snapshots;
}

void save_outage_polygons(const std::vector<OutagePolygonSnapshot>& snapshots,
                          const std::string& path) {
  auto out = open_out(path);
  out << "timestamp,polygon_id,vertex_index,x_m,y_m\n";
  for (const auto& snap : snapshots) {
    for (std::size_t pi = 0; pi < snap.polygons.size(); ++pi) {
      for (std::size_t vi = 0; vi < snap.polygons[pi].size(); ++vi) {
        out << format_iso_hour(snap.hour) << ",G" << pi << ',' << vi << ','
            << fmt_double(snap.polygons[pi][vi].x, 3) << ','
            << fmt_double(snap.polygons[pi][vi].y, 3) << '\n';
      }
    }
  }
}

void save_curated_events(const std::vector<CuratedEvent>& events,
                         const std::string& path) {
  json out = json::array();
  for (const auto& ev : events) {
    out.push_back({
        {"start", format_iso_hour(ev.start_hour)},
        {"end", format_iso_hour(ev.end_hour)},
        {"duration_h", ev.duration_h()},
        {"excluded", ev.excluded},
        {"reason", ev.reason},
    });
  }
  auto stream = open_out(path);
  stream << out.dump(2) << '\n';
}

void save_episodes_csv(const std::vector<EpisodeResult>& episodes,
                       const std::string& path) {
  auto out = open_out(path);
  out << "episode,hour,customers_out\n";
  for (const auto& ep : episodes) {
    for (std::size_t h = 0; h < ep.outage_trajectory.size(); ++h) {
      out << ep.episode_index << ',' << h << ',' << ep.outage_trajectory[h] << '\n';
    }
  }
}

std::vector<std::vector<long long>> load_episode_trajectories(const std::string& path) {
  auto table = read_csv(path, "episode,hour,customers_out");
  std::vector<std::vector<long long>> episodes;
  std::size_t line_no = 1;
  for (const auto& row : table.rows) {
    ++line_no;
    const long long ep = parse_int_field(row[0], path, line_no, "episode");
    const long long hour = parse_int_field(row[1], path, line_no, "hour");
    const long long out = parse_int_field(row[2], path, line_no, "customers_out");
    if (ep < 0 || ep > 10000000) {
      throw InputError(path + ":" + std::to_string(line_no) + ": episode out of range");
    }
    if (episodes.size() <= static_cast<std::size_t>(ep)) episodes.resize(ep + 1);
    auto& traj = episodes[ep];
    if (hour != static_cast<long long>(traj.size())) {
      throw InputError(path + ":" + std::to_string(line_no) +
                       ": hours not consecutive within episode");
    }
    traj.push_back(out);
  }
  return episodes;
}

void save_repairs_csv(const std::vector<EpisodeResult>& episodes,
                      const std::string& path) {
  auto out = open_out(path);
  out << "episode,line_id,crew_id,start_hour,finish_hour\n";
  for (const auto& ep : episodes) {
    for (const auto& r : ep.repair_log) {
      out << ep.episode_index << ',' << r.line_id << ',' << r.crew_id << ','
          << fmt_double(r.start_h, 6) << ',' << fmt_double(r.finish_h, 6) << '\n';
    }
  }
}

void save_flood_episodes_csv(const std::vector<FloodResult>& floods,
                             const std::string& path) {
  auto out = open_out(path);
  out << "episode,hour,flooded_customers,flooded_area_m2\n";
  for (std::size_t ep = 0; ep < floods.size(); ++ep) {
    const auto& f = floods[ep];
    for (std::size_t h = 0; h < f.flooded_customers_trajectory.size(); ++h) {
      out << ep << ',' << h << ',' << f.flooded_customers_trajectory[h] << ','
          << fmt_double(f.flooded_area_trajectory[h], 2) << '\n';
    }
  }
}

void save_flood_metrics_csv(const std::vector<FloodResult>& floods,
                            const std::string& path) {
  auto out = open_out(path);
  out << "episode,customer_peak,persistence_h,customer_auc,area_peak,area_auc\n";
  for (std::size_t ep = 0; ep < floods.size(); ++ep) {
    const auto& m = floods[ep].metrics;
    out << ep << ',' << m.customer_peak << ',' << m.persistence_h << ','
        << fmt_double(m.customer_auc, 2) << ',' << fmt_double(m.area_peak, 2) << ','
        << fmt_double(m.area_auc, 2) << '\n';
  }
}

void save_assessment_json(const AssessmentReport& report, const std::string& path) {
  json metrics = json::object();
  for (const auto& m : report.metrics) {
    json entry = {
        {"observed", m.observed}, {"sim_mean", m.sim_mean}, {"p05", m.p05},
        {"p95", m.p95},           {"assessable", m.assessable},
    };
    if (m.assessable) {
      entry["ratio"] = m.ratio;
      entry["strict_hit"] = m.strict_hit;
      entry["pragmatic_hit"] = m.pragmatic_hit;
    } else {
      entry["ratio"] = nullptr;
      entry["strict_hit"] = nullptr;
      entry["pragmatic_hit"] = nullptr;
    }
    metrics[m.metric] = std::move(entry);
  }
  const json out = {
      {"event", report.event_id},
      {"episodes", report.episodes},
      {"metrics", std::move(metrics)},
  };
  auto stream = open_out(path);
  stream << out.dump(2) << '\n';
}

void save_deciles_csv(const std::vector<DecileRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "decile,episodes,flood_occurrence,mean_flood_customer_auc\n";
  for (const auto& r : rows) {
    out << r.decile << ',' << r.episodes << ',' << fmt_double(r.flood_occurrence, 4)
        << ',' << fmt_double(r.mean_flood_customer_auc, 2) << '\n';
  }
}

void save_convergence_csv(const ConvergenceReport& report, const std::string& path) {
  auto out = open_out(path);
  out << "rung,metric,mean,rel_change_vs_final,stable\n";
  for (const auto& r : report.rows) {
    out << r.rung << ',' << r.metric << ',' << fmt_double(r.mean, 4) << ','
        << fmt_double(r.rel_change_vs_final, 6) << ',' << (r.stable ? "true" : "false")
        << '\n';
  }
}

void save_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  auto out = open_out(path);
  out << "factor,peak_ratio,duration_ratio,auc_ratio\n";
  for (const auto& r : rows) {
    out << fmt_double(r.factor, 4) << ',' << fmt_double(r.peak_ratio, 4) << ','
        << fmt_double(r.duration_ratio, 4) << ',' << fmt_double(r.auc_ratio, 4) << '\n';
  }
}

}  // namespace gridres
