#pragma once

// The problem world: nodes (depot, stands, chargers), the distance matrix,
// the flights with their towing windows, and all rate parameters.
//
// Node ids are dense: the depot is 0, stand nodes follow (one per flight),
// chargers come last. Clock values are minutes from midnight.

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "evtow/charging_model.hpp"
#include "evtow/energy_model.hpp"
#include "evtow/errors.hpp"

namespace evtow {

enum class NodeKind { depot, stand, charger };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::depot: return "depot";
    case NodeKind::stand: return "stand";
    case NodeKind::charger: return "charger";
  }
  return "depot";
}

inline NodeKind node_kind_from_string(const std::string& s) {
  if (s == "depot") return NodeKind::depot;
  if (s == "stand") return NodeKind::stand;
  if (s == "charger") return NodeKind::charger;
  throw ParseError("unknown node kind '" + s + "'");
}

struct Node {
  int id = 0;
  NodeKind kind = NodeKind::stand;
  bool has_position = false;
  double x = 0.0;  // m
  double y = 0.0;
  /// Stand nodes of different flights parked at the same physical stand share this label.
  std::optional<int> physical_stand;

  bool operator==(const Node&) const = default;
};

struct Flight {
  std::string id;
  int stand = 0;  // stand node id
  AircraftServiceProfile profile;
  double arrival = 0.0;    // scheduled, min
  double departure = 0.0;  // scheduled, min
  double earliest = 0.0;   // towing window e
  double latest = 0.0;     // towing window tau

  bool operator==(const Flight&) const = default;
};

struct CostRates {
  double fixed_per_tractor = 50.0;  // c1, $
  double energy_per_kwh = 0.2;      // c2
  double maintenance_per_m = 0.005; // c3
  double wait_per_min = 0.1;        // c_e
  double delay_per_min = 0.5;       // c_tau

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    for (double v : {fixed_per_tractor, energy_per_kwh, maintenance_per_m, wait_per_min, delay_per_min}) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        out.emplace_back("cost rates must be nonnegative");
        break;
      }
    }
    return out;
  }
  bool operator==(const CostRates&) const = default;
};

inline constexpr double kMaxTravelSpeedKmh = 25.0;

/// One charge-discharge coupling: fleet-wide peak speed and charge target.
struct Strategy {
  double speed_kmh = 25.0;
  double gamma = 0.8;

  double speed_mps() const { return kmh_to_mps(speed_kmh); }

  void validate() const {
    if (!(speed_kmh > 0.0 && speed_kmh <= kMaxTravelSpeedKmh)) {
      throw DomainError("strategy speed must lie in (0, 25] km/h");
    }
    if (!(gamma > kSocFloorFraction && gamma <= 1.0)) {
      throw DomainError("strategy gamma must lie in (0.2, 1]");
    }
  }
};

struct Instance {
  std::string name;
  std::vector<Node> nodes;
  std::vector<std::vector<double>> distance;  // m; infinity where no road exists
  std::vector<Flight> flights;
  VehicleParams vehicle;
  ChargingCurve charging;
  CostRates costs;
  std::optional<int> fleet_limit;  // unbounded when empty

  int node_count() const { return static_cast<int>(nodes.size()); }

  std::vector<int> stand_ids() const { return ids_of(NodeKind::stand); }
  std::vector<int> charger_ids() const { return ids_of(NodeKind::charger); }

  bool is_stand(int id) const {
    return id >= 0 && id < node_count() && nodes[id].kind == NodeKind::stand;
  }
  bool is_charger(int id) const {
    return id >= 0 && id < node_count() && nodes[id].kind == NodeKind::charger;
  }

  /// Flight index hosted at each node, -1 for non-stand nodes.
  std::vector<int> flight_of_node() const {
    std::vector<int> out(nodes.size(), -1);
    for (std::size_t f = 0; f < flights.size(); ++f) {
      const int s = flights[f].stand;
      if (s >= 0 && s < node_count()) out[s] = static_cast<int>(f);
    }
    return out;
  }

  bool operator==(const Instance&) const = default;

 private:
  std::vector<int> ids_of(NodeKind k) const {
    std::vector<int> out;
    for (const auto& n : nodes) {
      if (n.kind == k) out.push_back(n.id);
    }
    return out;
  }
};

/// Euclidean distances between positioned nodes; nodes at one physical stand are 0 m apart.
inline std::vector<std::vector<double>> euclidean_distances(const std::vector<Node>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!nodes[i].has_position) throw StructuralError("node " + std::to_string(i) + " has no position");
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = std::hypot(nodes[i].x - nodes[j].x, nodes[i].y - nodes[j].y);
    }
  }
  return d;
}

/// Every broken invariant, one message each. Empty means valid.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  const int n = inst.node_count();
  if (n == 0) {
    out.emplace_back("instance has no nodes");
    return out;
  }

  int depots = 0;
  for (int i = 0; i < n; ++i) {
    const Node& node = inst.nodes[i];
    if (node.id != i) out.push_back("node ids must be dense from 0; position " + std::to_string(i) + " holds id " + std::to_string(node.id));
    if (node.kind == NodeKind::depot) ++depots;
  }
  if (depots != 1) out.push_back("instance must have exactly one depot, found " + std::to_string(depots));
  if (inst.nodes[0].kind != NodeKind::depot) out.emplace_back("node 0 must be the depot");
  bool seen_charger = false;
  for (int i = 1; i < n; ++i) {
    if (inst.nodes[i].kind == NodeKind::charger) seen_charger = true;
    if (inst.nodes[i].kind == NodeKind::stand && seen_charger) {
      out.push_back("stand node " + std::to_string(i) + " follows a charger; stands must precede chargers");
      break;
    }
  }

  bool matrix_ok = static_cast<int>(inst.distance.size()) == n;
  for (const auto& row : inst.distance) matrix_ok = matrix_ok && static_cast<int>(row.size()) == n;
  if (!matrix_ok) {
    out.push_back("distance matrix must be " + std::to_string(n) + " x " + std::to_string(n));
  } else {
    for (int i = 0; i < n; ++i) {
      if (inst.distance[i][i] != 0.0) out.push_back("distance diagonal must be zero at node " + std::to_string(i));
      for (int j = 0; j < n; ++j) {
        const double d = inst.distance[i][j];
        if (std::isnan(d) || d < 0.0) {
          out.push_back("distance " + std::to_string(i) + "->" + std::to_string(j) + " must be nonnegative");
        }
      }
    }
    // Reachability from the depot over finite edges.
    std::vector<bool> reached(n, false);
    std::queue<int> q;
    q.push(0);
    reached[0] = true;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (!reached[v] && std::isfinite(inst.distance[u][v])) {
          reached[v] = true;
          q.push(v);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      if (!reached[i]) out.push_back("node " + std::to_string(i) + " is unreachable from the depot");
    }
  }

  std::vector<int> hosted(n, 0);
  std::map<std::string, int> flight_ids;
  for (const auto& f : inst.flights) {
    if (++flight_ids[f.id] == 2) out.push_back("duplicate flight id '" + f.id + "'");
    if (!inst.is_stand(f.stand)) {
      out.push_back("flight " + f.id + " is assigned to node " + std::to_string(f.stand) + ", which is not a stand");
      continue;
    }
    ++hosted[f.stand];
    if (!(f.earliest <= f.latest)) out.push_back("flight " + f.id + " has window start after window end");
    if (!(f.arrival < f.departure)) out.push_back("flight " + f.id + " departs before it arrives");
    const auto& p = f.profile;
    for (double v : {p.mass_kg, p.air_kw, p.lighting_kw, p.launch_kw, p.air_min, p.lighting_min, p.launch_min}) {
      if (!(v >= 0.0)) {
        out.push_back("flight " + f.id + " has a negative service profile value");
        break;
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (inst.nodes[i].kind == NodeKind::stand && hosted[i] != 1) {
      out.push_back("stand node " + std::to_string(i) + " hosts " + std::to_string(hosted[i]) + " flights, expected 1");
    }
  }

  // Flights at one physical stand must not overlap on the ground.
  std::map<int, std::vector<std::pair<double, double>>> occupancy;
  for (const auto& f : inst.flights) {
    if (!inst.is_stand(f.stand)) continue;
    const auto& label = inst.nodes[f.stand].physical_stand;
    if (label) occupancy[*label].emplace_back(f.arrival, f.departure);
  }
  for (auto& [label, spans] : occupancy) {
    std::sort(spans.begin(), spans.end());
    for (std::size_t i = 1; i < spans.size(); ++i) {
      if (spans[i].first < spans[i - 1].second) {
        out.push_back("physical stand " + std::to_string(label) + " hosts overlapping flights");
        break;
      }
    }
  }

  for (auto& m : inst.vehicle.validate()) out.push_back(std::move(m));
  for (auto& m : inst.charging.validate()) out.push_back(std::move(m));
  for (auto& m : inst.costs.validate()) out.push_back(std::move(m));
  if (inst.fleet_limit && *inst.fleet_limit < 1) out.emplace_back("fleet limit must be at least 1");
  return out;
}

inline void require_valid(const Instance& inst) {
  const auto problems = validate_instance(inst);
  if (!problems.empty()) throw StructuralError("invalid instance: " + problems.front());
}

}  // namespace evtow
