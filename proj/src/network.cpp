#include "gridres/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "gridres/common.hpp"

namespace gridres {

std::string to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::SubstationRoot: return "substation_root";
    case NodeKind::Junction: return "junction";
    case NodeKind::ServicePoint: return "service_point";
  }
  throw InternalError("unhandled NodeKind");
}

NodeKind node_kind_from_string(const std::string& s) {
  if (s == "substation_root") return NodeKind::SubstationRoot;
  if (s == "junction") return NodeKind::Junction;
  if (s == "service_point") return NodeKind::ServicePoint;
  throw InputError("unknown node kind '" + s + "'");
}

std::string to_string(TopologyMode mode) {
  return mode == TopologyMode::ServiceUnderground ? "service_underground"
                                                  : "all_overhead";
}

TopologyMode topology_mode_from_string(const std::string& s) {
  if (s == "service_underground") return TopologyMode::ServiceUnderground;
  if (s == "all_overhead") return TopologyMode::AllOverhead;
  throw InputError("unknown topology mode '" + s + "'");
}

std::vector<Violation> validate_network(const PowerNetwork& net) {
  std::vector<Violation> out;
  std::map<std::string, int> node_idx;
  for (int i = 0; i < static_cast<int>(net.nodes.size()); ++i) {
    const auto& n = net.nodes[i];
    if (!node_idx.emplace(n.id, i).second) out.push_back({n.id, "duplicate node id"});
    if (n.customers < 0) out.push_back({n.id, "negative customers"});
    if (n.kind == NodeKind::SubstationRoot && n.customers != 0) {
      out.push_back({n.id, "substation root has customers"});
    }
    if (!net.feeders.count(n.feeder_id)) {
      out.push_back({n.id, "unknown feeder '" + n.feeder_id + "'"});
    }
  }

  std::map<std::string, int> line_idx;
  for (int i = 0; i < static_cast<int>(net.lines.size()); ++i) {
    const auto& l = net.lines[i];
    if (!line_idx.emplace(l.id, i).second) out.push_back({l.id, "duplicate line id"});
    if (!(l.length_m > 0.0)) out.push_back({l.id, "non-positive length"});
    if (l.vegetation < 0.0 || l.vegetation > 1.0) {
      out.push_back({l.id, "vegetation outside [0,1]"});
    }
    auto a = node_idx.find(l.from_node);
    auto b = node_idx.find(l.to_node);
    if (a == node_idx.end()) out.push_back({l.id, "unknown node '" + l.from_node + "'"});
    if (b == node_idx.end()) out.push_back({l.id, "unknown node '" + l.to_node + "'"});
    if (a != node_idx.end() && b != node_idx.end()) {
      const auto& fa = net.nodes[a->second].feeder_id;
      const auto& fb = net.nodes[b->second].feeder_id;
      if (fa != fb) out.push_back({l.id, "cross-feeder line"});
      if (l.feeder_id != fa && l.feeder_id != fb) {
        out.push_back({l.id, "line feeder does not match endpoints"});
      }
    }
  }

  // Per-feeder radiality: orient by BFS from the root and require exactly one
  // parent line per non-root node, everything reachable, no leftover lines.
  for (const auto& [feeder_id, root_id] : net.feeders) {
    auto r = node_idx.find(root_id);
    if (r == node_idx.end()) {
      out.push_back({feeder_id, "feeder root node missing"});
      continue;
    }
    if (net.nodes[r->second].kind != NodeKind::SubstationRoot) {
      out.push_back({feeder_id, "feeder root is not a substation_root"});
    }

    std::vector<int> member_nodes;
    for (int i = 0; i < static_cast<int>(net.nodes.size()); ++i) {
      if (net.nodes[i].feeder_id == feeder_id) member_nodes.push_back(i);
    }
    std::vector<std::pair<int, int>> member_lines;  // (line, from,to resolved below)
    std::map<int, std::vector<std::pair<int, int>>> undirected;  // node -> (line, other)
    int resolved_lines = 0;
    for (int i = 0; i < static_cast<int>(net.lines.size()); ++i) {
      const auto& l = net.lines[i];
      if (l.feeder_id != feeder_id) continue;
      auto a = node_idx.find(l.from_node);
      auto b = node_idx.find(l.to_node);
      if (a == node_idx.end() || b == node_idx.end()) continue;
      undirected[a->second].push_back({i, b->second});
      undirected[b->second].push_back({i, a->second});
      ++resolved_lines;
    }

    std::map<int, int> parent_line;  // node -> line used to reach it
    std::deque<int> queue{r->second};
    std::set<int> seen{r->second};
    std::set<int> used_lines;
    bool cycle = false;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      auto it = undirected.find(u);
      if (it == undirected.end()) continue;
      for (auto [line, v] : it->second) {
        if (used_lines.count(line)) continue;
        used_lines.insert(line);
        if (seen.count(v)) {
          cycle = true;
          continue;
        }
        seen.insert(v);
        parent_line[v] = line;
        queue.push_back(v);
      }
    }
    if (cycle || static_cast<int>(used_lines.size()) != resolved_lines ||
        static_cast<int>(seen.size()) != static_cast<int>(member_nodes.size())) {
      bool disconnected = false;
      for (int n : member_nodes) {
        if (!seen.count(n)) disconnected = true;
      }
      if (cycle) out.push_back({feeder_id, "non-radial feeder"});
      if (disconnected) out.push_back({feeder_id, "feeder not connected to root"});
      continue;
    }
    // Orientation: every line's from_node must be the parent side.
    for (auto [node, line] : parent_line) {
      const auto& l = net.lines[line];
      if (node_idx.at(l.to_node) != node) {
        out.push_back({l.id, "line not oriented root to leaf"});
      }
    }
  }
  return out;
}

std::vector<Violation> validate_sewage(const SewageNetwork& sewage,
                                       const PowerNetwork* power) {
  std::vector<Violation> out;
  std::map<std::string, int> conduit_idx;
  for (int i = 0; i < static_cast<int>(sewage.conduits.size()); ++i) {
    const auto& c = sewage.conduits[i];
    if (!conduit_idx.emplace(c.id, i).second) {
      out.push_back({c.id, "duplicate conduit id"});
    }
    if (c.polyline.size() < 2) out.push_back({c.id, "polyline has fewer than 2 points"});
    if (!(c.length_m > 0.0)) out.push_back({c.id, "non-positive length"});
    const double geo = polyline_length(c.polyline);
    if (geo > 0.0 && std::abs(geo - c.length_m) > 1e-6 * std::max(geo, c.length_m)) {
      out.push_back({c.id, "length does not match polyline"});
    }
  }
  for (const auto& c : sewage.conduits) {
    if (!c.downstream_id.empty() && !conduit_idx.count(c.downstream_id)) {
      out.push_back({c.id, "unknown downstream conduit '" + c.downstream_id + "'"});
    }
  }
  // Downstream links must form a DAG toward outfalls.
  std::map<std::string, int> color;  // 0 unvisited, 1 in progress, 2 done
  for (const auto& c : sewage.conduits) {
    std::vector<const SewageConduit*> stack;
    const SewageConduit* cur = &c;
    while (cur != nullptr) {
      int& st = color[cur->id];
      if (st == 2) break;
      if (st == 1) {
        out.push_back({cur->id, "downstream cycle"});
        break;
      }
      st = 1;
      stack.push_back(cur);
      if (cur->downstream_id.empty()) break;
      auto it = conduit_idx.find(cur->downstream_id);
      cur = it == conduit_idx.end() ? nullptr : &sewage.conduits[it->second];
    }
    for (auto* s : stack) color[s->id] = 2;
  }

  std::set<std::string> pump_ids;
  std::set<std::string> power_nodes;
  if (power != nullptr) {
    for (const auto& n : power->nodes) power_nodes.insert(n.id);
  }
  for (const auto& p : sewage.pumps) {
    if (!pump_ids.insert(p.id).second) out.push_back({p.id, "duplicate pump id"});
    if (!conduit_idx.count(p.lift_conduit_id)) {
      out.push_back({p.id, "unknown lift conduit '" + p.lift_conduit_id + "'"});
    }
    if (power != nullptr && !power_nodes.count(p.power_node_id)) {
      out.push_back({p.id, "unknown power node '" + p.power_node_id + "'"});
    }
  }
  return out;
}

NetworkIndex::NetworkIndex(const PowerNetwork& net) : net_(&net) {
  auto violations = validate_network(net);
  if (!violations.empty()) {
    std::string msg = "invalid network:";
    std::size_t shown = 0;
    for (const auto& v : violations) {
      if (++shown > 8) {
        msg += " ... (" + std::to_string(violations.size()) + " total)";
        break;
      }
      msg += " [" + v.subject_id + ": " + v.rule + "]";
    }
    throw InputError(msg);
  }

  for (int i = 0; i < node_count(); ++i) node_by_id_[net.nodes[i].id] = i;
  for (int i = 0; i < line_count(); ++i) line_by_id_[net.lines[i].id] = i;
  for (const auto& [fid, root] : net.feeders) feeder_ids_.push_back(fid);
  std::sort(feeder_ids_.begin(), feeder_ids_.end());

  std::map<std::string, int> feeder_pos;
  for (int f = 0; f < feeder_count(); ++f) feeder_pos[feeder_ids_[f]] = f;
  roots_.resize(feeder_count());
  for (const auto& [fid, root] : net.feeders) {
    roots_[feeder_pos[fid]] = node_by_id_.at(root);
  }

  node_feeder_.resize(node_count());
  for (int i = 0; i < node_count(); ++i) {
    node_feeder_[i] = feeder_pos.at(net.nodes[i].feeder_id);
    total_customers_ += net.nodes[i].customers;
  }
  feeder_customers_.assign(feeder_count(), 0);
  for (int i = 0; i < node_count(); ++i) {
    feeder_customers_[node_feeder_[i]] += net.nodes[i].customers;
  }

  line_from_.resize(line_count());
  line_to_.resize(line_count());
  line_feeder_.resize(line_count());
  line_mid_.resize(line_count());
  children_.assign(node_count(), {});
  for (int i = 0; i < line_count(); ++i) {
    const auto& l = net.lines[i];
    line_from_[i] = node_by_id_.at(l.from_node);
    line_to_[i] = node_by_id_.at(l.to_node);
    line_feeder_[i] = feeder_pos.at(l.feeder_id);
    line_mid_[i] = midpoint(net.nodes[line_from_[i]].position,
                            net.nodes[line_to_[i]].position);
    children_[line_from_[i]].push_back({i, line_to_[i]});
  }

  line_id_rank_.resize(line_count());
  {
    std::vector<int> order(line_count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return net.lines[a].id < net.lines[b].id;
    });
    for (int rank = 0; rank < line_count(); ++rank) line_id_rank_[order[rank]] = rank;
  }

  // Subtree customer sums, children before parents.
  downstream_customers_.assign(line_count(), 0);
  std::vector<long long> subtree(node_count());
  for (int i = 0; i < node_count(); ++i) subtree[i] = net.nodes[i].customers;
  std::vector<int> dfs_order;
  dfs_order.reserve(node_count());
  for (int root : roots_) {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      dfs_order.push_back(u);
      for (auto [line, v] : children_[u]) stack.push_back(v);
    }
  }
  for (auto it = dfs_order.rbegin(); it != dfs_order.rend(); ++it) {
    for (auto [line, v] : children_[*it]) subtree[*it] += subtree[v];
  }
  for (int i = 0; i < line_count(); ++i) {
    downstream_customers_[i] = subtree[line_to_[i]];
  }

  for (int i = 0; i < node_count(); ++i) {
    if (net.nodes[i].customers > 0) {
      customer_points_.push_back({net.nodes[i].position, net.nodes[i].customers});
    }
  }
}

int NetworkIndex::node_index(const std::string& id) const {
  auto it = node_by_id_.find(id);
  if (it == node_by_id_.end()) throw InputError("unknown node id '" + id + "'");
  return it->second;
}

int NetworkIndex::line_index(const std::string& id) const {
  auto it = line_by_id_.find(id);
  if (it == line_by_id_.end()) throw InputError("unknown line id '" + id + "'");
  return it->second;
}

int NetworkIndex::feeder_index(const std::string& feeder_id) const {
  auto it = std::lower_bound(feeder_ids_.begin(), feeder_ids_.end(), feeder_id);
  if (it == feeder_ids_.end() || *it != feeder_id) {
    throw InputError("unknown feeder id '" + feeder_id + "'");
  }
  return static_cast<int>(it - feeder_ids_.begin());
}

void NetworkIndex::reachable_nodes(const std::vector<uint8_t>& line_failed,
                                   std::vector<uint8_t>& node_reached) const {
  node_reached.assign(node_count(), 0);
  std::vector<int> stack;
  for (int root : roots_) {
    node_reached[root] = 1;
    stack.push_back(root);
  }
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (auto [line, v] : children_[u]) {
      if (line_failed[line] || node_reached[v]) continue;
      node_reached[v] = 1;
      stack.push_back(v);
    }
  }
}

long long NetworkIndex::disconnected_customers(
    const std::vector<uint8_t>& line_failed) const {
  std::vector<uint8_t> reached;
  reachable_nodes(line_failed, reached);
  long long connected = 0;
  for (int i = 0; i < node_count(); ++i) {
    if (reached[i]) connected += net_->nodes[i].customers;
  }
  return total_customers_ - connected;
}

std::vector<long long> NetworkIndex::disconnected_by_feeder(
    const std::vector<uint8_t>& line_failed) const {
  std::vector<uint8_t> reached;
  reachable_nodes(line_failed, reached);
  std::vector<long long> out(feeder_customers_);
  for (int i = 0; i < node_count(); ++i) {
    if (reached[i]) out[node_feeder_[i]] -= net_->nodes[i].customers;
  }
  return out;
}

long long disconnected_customers(const PowerNetwork& net,
                                 const std::set<std::string>& failed_lines) {
  NetworkIndex index(net);
  std::vector<uint8_t> failed(net.lines.size(), 0);
  for (const auto& id : failed_lines) failed[index.line_index(id)] = 1;
  return index.disconnected_customers(failed);
}

long long downstream_customers(const PowerNetwork& net, const std::string& line_id) {
  NetworkIndex index(net);
  return index.downstream_customers(index.line_index(line_id));
}

PowerNetwork apply_topology_assumption(PowerNetwork net, TopologyMode mode) {
  for (auto& line : net.lines) {
    if (mode == TopologyMode::AllOverhead) {
      line.overhead = true;
    } else if (line.service_drop) {
      line.overhead = false;
    }
  }
  return net;
}

std::vector<UpstreamReach> upstream_conduits(const SewageNetwork& sewage,
                                             const std::string& pump_id,
                                             double max_distance_m) {
  const SewagePump* pump = nullptr;
  for (const auto& p : sewage.pumps) {
    if (p.id == pump_id) pump = &p;
  }
  if (pump == nullptr) throw InputError("unknown pump id '" + pump_id + "'");

  std::map<std::string, int> conduit_idx;
  for (int i = 0; i < static_cast<int>(sewage.conduits.size()); ++i) {
    conduit_idx[sewage.conduits[i].id] = i;
  }
  auto lift = conduit_idx.find(pump->lift_conduit_id);
  if (lift == conduit_idx.end()) {
    throw InputError("pump '" + pump_id + "' references unknown lift conduit '" +
                     pump->lift_conduit_id + "'");
  }

  std::vector<std::vector<int>> upstream_of(sewage.conduits.size());
  for (int i = 0; i < static_cast<int>(sewage.conduits.size()); ++i) {
    const auto& c = sewage.conduits[i];
    if (c.downstream_id.empty()) continue;
    auto it = conduit_idx.find(c.downstream_id);
    if (it != conduit_idx.end()) upstream_of[it->second].push_back(i);
  }

  // Distance to a conduit = summed lengths of traversed upstream conduits,
  // including the target's own length; the lift conduit sits at 0.
  std::map<std::string, double> dist_by_id;
  std::vector<std::pair<int, double>> stack{{lift->second, 0.0}};
  while (!stack.empty()) {
    auto [cur, d] = stack.back();
    stack.pop_back();
    dist_by_id[sewage.conduits[cur].id] = d;
    for (int up : upstream_of[cur]) {
      const double nd = d + sewage.conduits[up].length_m;
      if (nd <= max_distance_m && !dist_by_id.count(sewage.conduits[up].id)) {
        stack.push_back({up, nd});
      }
    }
  }

  std::vector<UpstreamReach> out;
  out.reserve(dist_by_id.size());
  for (const auto& [id, d] : dist_by_id) out.push_back({id, d});
  return out;
}

}  // namespace gridres
