#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gridres/geometry.hpp"

namespace gridres {

enum class NodeKind { SubstationRoot, Junction, ServicePoint };

std::string to_string(NodeKind kind);
NodeKind node_kind_from_string(const std::string& s);

struct PowerNode {
  std::string id;
  Point position;
  std::string feeder_id;
  long long customers = 0;  // 0 for substation roots
  std::string patch_id;
  NodeKind kind = NodeKind::Junction;
  bool operator==(const PowerNode&) const = default;
};

// Lines are oriented root -> leaf. Underground lines never appear in any
// wind-failure sample.
struct PowerLine {
  std::string id;
  std::string from_node;
  std::string to_node;
  double length_m = 0.0;
  bool overhead = true;
  double vegetation = 0.0;  // exposure in [0,1]
  bool service_drop = false;
  std::string feeder_id;
  bool operator==(const PowerLine&) const = default;
};

// Radial feeder forest: each feeder is a tree rooted at its substation.
struct PowerNetwork {
  std::vector<PowerNode> nodes;
  std::vector<PowerLine> lines;
  std::map<std::string, std::string> feeders;  // feeder_id -> root node id
  bool operator==(const PowerNetwork&) const = default;
};

struct SewageConduit {
  std::string id;
  std::vector<Point> polyline;
  std::string downstream_id;  // empty = outfall
  double length_m = 0.0;
  bool operator==(const SewageConduit&) const = default;
};

struct SewagePump {
  std::string id;
  Point position;
  std::string power_node_id;
  std::string lift_conduit_id;
  bool operator==(const SewagePump&) const = default;
};

struct SewageNetwork {
  std::vector<SewageConduit> conduits;
  std::vector<SewagePump> pumps;
  bool operator==(const SewageNetwork&) const = default;
};

struct Violation {
  std::string subject_id;
  std::string rule;
  bool operator==(const Violation&) const = default;
};

// Violations are data, not failures: an empty list means all invariants hold.
std::vector<Violation> validate_network(const PowerNetwork& net);
std::vector<Violation> validate_sewage(const SewageNetwork& sewage,
                                       const PowerNetwork* power = nullptr);

// Read-optimized view of a validated PowerNetwork. Immutable after
// construction and safe for concurrent use by parallel episode workers.
// Throws InputError when the network fails validation.
class NetworkIndex {
 public:
  explicit NetworkIndex(const PowerNetwork& net);

  const PowerNetwork& net() const { return *net_; }
  int node_count() const { return static_cast<int>(net_->nodes.size()); }
  int line_count() const { return static_cast<int>(net_->lines.size()); }
  int feeder_count() const { return static_cast<int>(feeder_ids_.size()); }

  int node_index(const std::string& id) const;  // throws InputError if unknown
  int line_index(const std::string& id) const;
  const std::vector<std::string>& feeder_ids() const { return feeder_ids_; }
  int feeder_index(const std::string& feeder_id) const;

  const std::string& line_id(int line) const { return net_->lines[line].id; }
  int line_feeder(int line) const { return line_feeder_[line]; }
  int line_to_node(int line) const { return line_to_[line]; }
  Point line_midpoint(int line) const { return line_mid_[line]; }
  int line_id_rank(int line) const { return line_id_rank_[line]; }
  const std::string& line_patch(int line) const {
    return net_->nodes[line_to_[line]].patch_id;
  }

  Point node_position(int node) const { return net_->nodes[node].position; }
  long long node_customers(int node) const { return net_->nodes[node].customers; }
  int node_feeder(int node) const { return node_feeder_[node]; }
  Point root_position(int feeder) const { return net_->nodes[roots_[feeder]].position; }
  int root_node(int feeder) const { return roots_[feeder]; }

  long long total_customers() const { return total_customers_; }
  long long feeder_customers(int feeder) const { return feeder_customers_[feeder]; }
  long long downstream_customers(int line) const { return downstream_customers_[line]; }

  // Marks nodes reachable from their feeder root over intact lines.
  void reachable_nodes(const std::vector<uint8_t>& line_failed,
                       std::vector<uint8_t>& node_reached) const;
  long long disconnected_customers(const std::vector<uint8_t>& line_failed) const;
  std::vector<long long> disconnected_by_feeder(
      const std::vector<uint8_t>& line_failed) const;

  // Node positions repeated with multiplicity = customers, collapsed to
  // (point, count); the customer layer used by polygon and flood containment.
  const std::vector<std::pair<Point, long long>>& customer_points() const {
    return customer_points_;
  }

 private:
  const PowerNetwork* net_;
  std::map<std::string, int> node_by_id_;
  std::map<std::string, int> line_by_id_;
  std::vector<std::string> feeder_ids_;  // sorted
  std::vector<int> roots_;               // node index per feeder
  std::vector<int> line_from_;
  std::vector<int> line_to_;
  std::vector<int> line_feeder_;
  std::vector<int> node_feeder_;
  std::vector<int> line_id_rank_;
  std::vector<Point> line_mid_;
  std::vector<long long> downstream_customers_;
  std::vector<long long> feeder_customers_;
  std::vector<std::vector<std::pair<int, int>>> children_;  // node -> (line, child)
  std::vector<std::pair<Point, long long>> customer_points_;
  long long total_customers_ = 0;
};

// Spec-level operations over id sets. These build an index per call; use
// NetworkIndex directly inside hot loops.
long long disconnected_customers(const PowerNetwork& net,
                                 const std::set<std::string>& failed_lines);
long long downstream_customers(const PowerNetwork& net, const std::string& line_id);

enum class TopologyMode { ServiceUnderground, AllOverhead };

std::string to_string(TopologyMode mode);
TopologyMode topology_mode_from_string(const std::string& s);

PowerNetwork apply_topology_assumption(PowerNetwork net, TopologyMode mode);

struct UpstreamReach {
  std::string conduit_id;
  double distance_m = 0.0;  // cumulative upstream distance from the lift conduit
  bool operator==(const UpstreamReach&) const = default;
};

// Conduits reachable against the flow direction from the pump's lift conduit,
// within a cumulative upstream distance budget. The lift conduit itself is
// always included at distance 0. Sorted by conduit id.
std::vector<UpstreamReach> upstream_conduits(const SewageNetwork& sewage,
                                             const std::string& pump_id,
                                             double max_distance_m);

}  // namespace gridres
