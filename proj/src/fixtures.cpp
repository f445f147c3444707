#include "gridres/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "gridres/common.hpp"
#include "gridres/csv.hpp"
#include "gridres/rng.hpp"

namespace gridres {

namespace {

std::string tagged_id(const char* prefix, int n) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05d", prefix, n);
  return buf;
}

Point clamp_to_domain(Point p) {
  const double margin = 10.0;
  return {std::clamp(p.x, margin, kFixtureDomainM - margin),
          std::clamp(p.y, margin, kFixtureDomainM - margin)};
}

Point quantized(Point p) { return {snap_decimal(p.x, 3), snap_decimal(p.y, 3)}; }

}  // namespace

FixtureBundle generate_fixture(const FixtureSpec& spec) {
  if (spec.feeders < 1 || spec.nodes_per_feeder < 2) {
    throw InputError("fixture needs >= 1 feeder and >= 2 nodes per feeder");
  }
  if (spec.customers_min < 0 || spec.customers_min > spec.customers_max) {
    throw InputError("fixture customer range invalid");
  }
  if (spec.underground_fraction < 0.0 || spec.underground_fraction > 1.0) {
    throw InputError("underground_fraction outside [0,1]");
  }
  if (spec.patch_rows < 1 || spec.patch_cols < 1) {
    throw InputError("patch grid must be at least 1x1");
  }
  if (spec.pumps > 0 && spec.conduit_chain_length < 1) {
    throw InputError("conduit_chain_length must be >= 1");
  }

  rng::Stream stream(rng::substream_seed(spec.seed, rng::kTagFixture));
  FixtureBundle bundle;

  // Patch grid partitioning the domain.
  const double cell_w = kFixtureDomainM / spec.patch_cols;
  const double cell_h = kFixtureDomainM / spec.patch_rows;
  for (int r = 0; r < spec.patch_rows; ++r) {
    for (int c = 0; c < spec.patch_cols; ++c) {
      PatchGrid::Patch patch;
      patch.id = tagged_id("P", r * spec.patch_cols + c);
      patch.rect = {snap_decimal(c * cell_w, 3), snap_decimal(r * cell_h, 3),
                    snap_decimal((c + 1) * cell_w, 3), snap_decimal((r + 1) * cell_h, 3)};
      bundle.patches.patches.push_back(std::move(patch));
    }
  }
  auto patch_at = [&](Point p) {
    int c = std::min(spec.patch_cols - 1, static_cast<int>(p.x / cell_w));
    int r = std::min(spec.patch_rows - 1, static_cast<int>(p.y / cell_h));
    return bundle.patches.patches[r * spec.patch_cols + c].id;
  };

  // Radial feeders as random recursive trees on the plane.
  int node_counter = 0;
  int line_counter = 0;
  for (int f = 0; f < spec.feeders; ++f) {
    const std::string feeder_id = tagged_id("F", f);
    std::vector<int> feeder_nodes;  // indices into bundle.power.nodes
    // Feeders differ in customer density: the per-node draw is skewed by a
    // per-feeder exponent, still bounded by customers_range.
    const double density_skew = 0.35 + 2.45 * stream.next_unit();

    PowerNode root;
    root.id = tagged_id("N", node_counter++);
    root.position = quantized(clamp_to_domain({stream.uniform(0.15, 0.85) * kFixtureDomainM,
                                               stream.uniform(0.15, 0.85) * kFixtureDomainM}));
    root.feeder_id = feeder_id;
    root.customers = 0;
    root.kind = NodeKind::SubstationRoot;
    bundle.power.feeders[feeder_id] = root.id;
    feeder_nodes.push_back(static_cast<int>(bundle.power.nodes.size()));
    bundle.power.nodes.push_back(std::move(root));

    std::vector<int> line_of_node(spec.nodes_per_feeder, -1);
    for (int k = 1; k < spec.nodes_per_feeder; ++k) {
      const int parent_local = static_cast<int>(stream.uniform_index(k));
      const auto& parent = bundle.power.nodes[feeder_nodes[parent_local]];

      const double angle = stream.uniform(0.0, 2.0 * M_PI);
      const double step = stream.uniform(120.0, 300.0);
      Point pos = clamp_to_domain({parent.position.x + step * std::cos(angle),
                                   parent.position.y + step * std::sin(angle)});
      if (dist(parent.position, pos) < 30.0) {
        // Clamping collapsed the offset; nudge toward the domain center.
        const Point center{kFixtureDomainM / 2, kFixtureDomainM / 2};
        const double d = dist(parent.position, center);
        const double ux = d > 0 ? (center.x - parent.position.x) / d : 1.0;
        const double uy = d > 0 ? (center.y - parent.position.y) / d : 0.0;
        pos = {parent.position.x + 60.0 * ux, parent.position.y + 60.0 * uy};
      }
      pos = quantized(pos);

      PowerNode node;
      node.id = tagged_id("N", node_counter++);
      node.position = pos;
      node.feeder_id = feeder_id;
      node.customers = 0;  // customers assigned to leaves below
      node.kind = NodeKind::Junction;

      PowerLine line;
      line.id = tagged_id("L", line_counter++);
      line.from_node = parent.id;
      line.to_node = node.id;
      line.length_m = std::max(1.0, snap_decimal(dist(parent.position, pos), 3));
      line.overhead = stream.next_unit() >= spec.underground_fraction;
      line.vegetation =
          snap_decimal(stream.uniform(spec.vegetation_min, spec.vegetation_max), 4);
      line.service_drop = false;
      line.feeder_id = feeder_id;

      feeder_nodes.push_back(static_cast<int>(bundle.power.nodes.size()));
      line_of_node[k] = static_cast<int>(bundle.power.lines.size());
      bundle.power.nodes.push_back(std::move(node));
      bundle.power.lines.push_back(std::move(line));
    }

    // Leaves become customer service points; their feed line is the drop.
    std::set<std::string> parents;
    for (const auto& l : bundle.power.lines) {
      if (l.feeder_id == feeder_id) parents.insert(l.from_node);
    }
    const long long span = spec.customers_max - spec.customers_min + 1;
    for (int k = 1; k < spec.nodes_per_feeder; ++k) {
      auto& node = bundle.power.nodes[feeder_nodes[k]];
      if (parents.count(node.id)) continue;
      node.kind = NodeKind::ServicePoint;
      const double draw = std::pow(stream.next_unit(), density_skew);
      node.customers = std::min(
          spec.customers_max,
          spec.customers_min + static_cast<long long>(draw * static_cast<double>(span)));
      bundle.power.lines[line_of_node[k]].service_drop = true;
    }
  }
  for (auto& node : bundle.power.nodes) node.patch_id = patch_at(node.position);

  // Pumps at service points, each with an upstream conduit chain. The lift
  // conduit starts offset from the pump node so small flood radii can miss
  // the node's customers.
  if (spec.pumps > 0) {
    std::vector<int> service_nodes;
    for (int i = 0; i < static_cast<int>(bundle.power.nodes.size()); ++i) {
      if (bundle.power.nodes[i].kind == NodeKind::ServicePoint) service_nodes.push_back(i);
    }
    if (static_cast<int>(service_nodes.size()) < spec.pumps) {
      throw InputError("fixture has fewer service points than requested pumps");
    }
    int conduit_counter = 0;
    for (int p = 0; p < spec.pumps; ++p) {
      const std::size_t pick = stream.uniform_index(service_nodes.size());
      const int node_idx = service_nodes[pick];
      service_nodes.erase(service_nodes.begin() + static_cast<long>(pick));
      const auto& node = bundle.power.nodes[node_idx];

      SewagePump pump;
      pump.id = tagged_id("PU", p);
      pump.position = node.position;
      pump.power_node_id = node.id;

      const double heading = stream.uniform(0.0, 2.0 * M_PI);
      Point cursor = quantized(clamp_to_domain(
          {node.position.x + stream.uniform(50.0, 120.0) * std::cos(heading),
           node.position.y + stream.uniform(50.0, 120.0) * std::sin(heading)}));
      std::string downstream;  // lift conduit drains to the outfall
      for (int k = 0; k < spec.conduit_chain_length; ++k) {
        const double seg_angle = heading + stream.uniform(-0.5, 0.5);
        const double seg_len = stream.uniform(50.0, 110.0);
        Point far = quantized(clamp_to_domain({cursor.x + seg_len * std::cos(seg_angle),
                                               cursor.y + seg_len * std::sin(seg_angle)}));
        if (dist(cursor, far) < 5.0) {
          // Clamping collapsed the segment; run it toward the domain center.
          const Point center{kFixtureDomainM / 2, kFixtureDomainM / 2};
          const double d = std::max(1.0, dist(cursor, center));
          far = quantized({cursor.x + 50.0 * (center.x - cursor.x) / d,
                           cursor.y + 50.0 * (center.y - cursor.y) / d});
        }
        SewageConduit conduit;
        conduit.id = tagged_id("C", conduit_counter++);
        conduit.polyline = {cursor, far};
        conduit.downstream_id = downstream;
        conduit.length_m = polyline_length(conduit.polyline);
        downstream = conduit.id;
        if (k == 0) pump.lift_conduit_id = conduit.id;
        bundle.sewage.conduits.push_back(std::move(conduit));
        cursor = far;
      }
      bundle.sewage.pumps.push_back(std::move(pump));
    }
  }

  auto power_violations = validate_network(bundle.power);
  auto patch_violations = validate_patch_refs(bundle.power, bundle.patches);
  auto sewage_violations = validate_sewage(bundle.sewage, &bundle.power);
  if (!power_violations.empty() || !patch_violations.empty() ||
      !sewage_violations.empty()) {
    throw InternalError("generated fixture failed validation");
  }
  return bundle;
}

ObservedSeries generate_observed_series(const PowerNetwork& net,
                                        const WeatherEvent& event,
                                        const FragilityParams& frag,
                                        const EpisodeConfig& cfg, uint64_t seed) {
  Simulator sim(net, event, frag, cfg);
  const auto episode = sim.run_episode(rng::substream_seed(seed, rng::kTagObserved));

  const auto& index = sim.index();
  ObservedSeries series;
  for (int f = 0; f < index.feeder_count(); ++f) {
    series.per_feeder_total[index.feeder_ids()[f]] = index.feeder_customers(f);
  }
  std::vector<uint8_t> failed(net.lines.size(), 0);
  for (int t = 0; t < static_cast<int>(episode.outage_trajectory.size()); ++t) {
    series.hours.push_back(event.start_hour + t);
    std::fill(failed.begin(), failed.end(), 0);
    for (const auto& id : failed_lines_at(episode, static_cast<double>(t))) {
      failed[index.line_index(id)] = 1;
    }
    const auto per_feeder = index.disconnected_by_feeder(failed);
    for (int f = 0; f < index.feeder_count(); ++f) {
      series.per_feeder_out[index.feeder_ids()[f]].push_back(per_feeder[f]);
    }
  }
  return series;
}

}  // namespace gridres
