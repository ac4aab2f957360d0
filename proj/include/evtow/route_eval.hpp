#pragma once

// Forward simulation and costing of tractor routes.
//
// A tractor leaves the depot at 00:00 with a full battery. At a stand it
// starts service at max(arrival, e); arriving after tau is allowed and paid
// per minute of delay, arriving early is paid per minute of waiting. At a
// charger it tops up to gamma * B when below that level. Costs are:
//   fixed        c1 per nonempty route
//   charging     c2 per kWh put back, at chargers and on the depot return
//   maintenance  c3 per metre driven
//   time         c_e per waiting minute + c_tau per delay minute

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "evtow/charging_model.hpp"
#include "evtow/energy_model.hpp"
#include "evtow/errors.hpp"
#include "evtow/instance.hpp"

namespace evtow {

/// Travel legs under the start-stop profile or at constant speed; service
/// energy is the same under both.
enum class EnergyModelKind { start_stop, traditional };
enum class WindowMode { soft, hard };

inline const char* to_string(EnergyModelKind k) {
  return k == EnergyModelKind::start_stop ? "start_stop" : "traditional";
}

struct EvalSettings {
  EnergyModelKind energy = EnergyModelKind::start_stop;
  /// Hard mode reports arrivals after tau as violations; costs are unchanged.
  WindowMode windows = WindowMode::soft;
};

using Route = std::vector<int>;

struct Solution {
  std::vector<Route> routes;
  bool operator==(const Solution&) const = default;
};

struct Visit {
  int node = 0;
  NodeKind kind = NodeKind::depot;
  double arrival = 0.0;  // min
  double start = 0.0;    // service or charging start
  double departure = 0.0;
  double soc_arrival = 0.0;  // kWh
  double soc_departure = 0.0;
  double wait = 0.0;   // min before the window opens
  double delay = 0.0;  // min after the window closes
  std::optional<ChargeEvent> charge;
};

struct RouteTrace {
  std::vector<Visit> visits;
  double distance_m = 0.0;
  double energy_kwh = 0.0;  // travel plus service consumption
  double charged_kwh = 0.0;
  double soc_return = 0.0;
  /// Lowest state of charge reached anywhere, including mid-leg before braking.
  double min_soc = 0.0;
};

struct CostBreakdown {
  double fixed = 0.0;         // f1
  double charging = 0.0;      // f2
  double maintenance = 0.0;   // f3
  double time_penalty = 0.0;  // f4
  double total = 0.0;         // f

  CostBreakdown& operator+=(const CostBreakdown& o) {
    fixed += o.fixed;
    charging += o.charging;
    maintenance += o.maintenance;
    time_penalty += o.time_penalty;
    total += o.total;
    return *this;
  }
};

struct Violation {
  std::string rule;  // structure | coverage | soc_floor | window | fleet
  int route = -1;
  int position = -1;
  std::string message;
};

/// Reciprocal of the total cost.
inline double fitness(const CostBreakdown& c) {
  if (!(c.total > 0.0)) throw DomainError("fitness: total cost must be positive");
  return 1.0 / c.total;
}

inline bool route_is_empty(const Route& r) { return r.size() <= 2; }

inline Solution prune_empty(Solution s) {
  std::erase_if(s.routes, route_is_empty);
  return s;
}

/// Summary of one route without a per-visit trace.
struct RouteScore {
  CostBreakdown cost;
  bool soc_ok = true;
  bool windows_ok = true;  // no arrival after tau
  double wait = 0.0;
  double delay = 0.0;
  double distance_m = 0.0;
  double energy_kwh = 0.0;
  double end_time = 0.0;
};

struct Evaluation {
  CostBreakdown cost;
  int tractors = 0;
  bool feasible = true;
};

/// Precomputed leg and service tables for one (instance, strategy, settings).
class Evaluator {
 public:
  Evaluator(const Instance& inst, Strategy strategy, EvalSettings settings = {})
      : inst_(&inst), strategy_(strategy), settings_(settings) {
    strategy_.validate();
    n_ = inst.node_count();
    capacity_ = inst.vehicle.battery_capacity_kwh;
    floor_ = kSocFloorFraction * capacity_;
    target_ = strategy_.gamma * capacity_;
    const double v = strategy_.speed_mps();
    const std::size_t nn = static_cast<std::size_t>(n_) * n_;
    time_.assign(nn, 0.0);
    energy_.assign(nn, 0.0);
    draw_.assign(nn, 0.0);
    dist_.assign(nn, 0.0);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        const double l = inst.distance[i][j];
        const std::size_t k = idx(i, j);
        dist_[k] = l;
        if (!std::isfinite(l)) {
          time_[k] = energy_[k] = draw_[k] = std::numeric_limits<double>::infinity();
          continue;
        }
        if (l <= 0.0) continue;  // same place: no movement
        time_[k] = travel_time(l, v, inst.vehicle);
        if (settings_.energy == EnergyModelKind::start_stop) {
          const PhaseEnergy e = travel_phases(l, v, inst.vehicle);
          energy_[k] = e.total();
          draw_[k] = e.accel + e.cruise;
        } else {
          energy_[k] = draw_[k] = traditional_energy(l, v, inst.vehicle);
        }
      }
    }
    kind_.resize(n_);
    for (int i = 0; i < n_; ++i) kind_[i] = inst.nodes[i].kind;
    svc_time_.assign(n_, 0.0);
    svc_energy_.assign(n_, 0.0);
    earliest_.assign(n_, 0.0);
    latest_.assign(n_, 0.0);
    for (const auto& f : inst.flights) {
      if (!inst.is_stand(f.stand)) continue;
      svc_time_[f.stand] = service_time(f.profile, inst.vehicle);
      svc_energy_[f.stand] = service_energy(f.profile, inst.vehicle);
      earliest_[f.stand] = f.earliest;
      latest_[f.stand] = f.latest;
    }
  }

  const Instance& instance() const { return *inst_; }
  const Strategy& strategy() const { return strategy_; }
  const EvalSettings& settings() const { return settings_; }
  int node_count() const { return n_; }
  double capacity() const { return capacity_; }
  double soc_floor() const { return floor_; }
  double charge_target() const { return target_; }

  double distance(int i, int j) const { return dist_[idx(i, j)]; }
  double leg_time(int i, int j) const { return time_[idx(i, j)]; }
  double leg_energy(int i, int j) const { return energy_[idx(i, j)]; }
  double leg_draw(int i, int j) const { return draw_[idx(i, j)]; }
  double service_minutes(int node) const { return svc_time_[node]; }
  double service_kwh(int node) const { return svc_energy_[node]; }
  double earliest(int node) const { return earliest_[node]; }
  double latest(int node) const { return latest_[node]; }
  NodeKind kind(int node) const { return kind_[node]; }

  /// Minutes to charge from soc up to the strategy target; zero when already there.
  double charge_duration(double soc) const {
    if (soc >= target_) return 0.0;
    return charge_minutes(std::max(soc, 0.0), target_, capacity_, inst_->charging);
  }

  /// Full per-visit trace. Malformed routes raise StructuralError.
  RouteTrace simulate(const Route& route) const {
    RouteTrace trace;
    walk(route, &trace);
    return trace;
  }

  RouteScore score(const Route& route) const { return walk(route, nullptr); }

  /// Cost and feasibility of a structurally sound solution (coverage is not checked).
  Evaluation evaluate(const Solution& s) const {
    Evaluation out;
    for (const auto& r : s.routes) {
      if (route_is_empty(r)) continue;
      const RouteScore sc = score(r);
      out.cost += sc.cost;
      ++out.tractors;
      out.feasible = out.feasible && sc.soc_ok;
      if (settings_.windows == WindowMode::hard) out.feasible = out.feasible && sc.windows_ok;
    }
    if (inst_->fleet_limit && out.tractors > *inst_->fleet_limit) out.feasible = false;
    return out;
  }

  std::vector<Violation> check(const Solution& s) const {
    std::vector<Violation> out;
    std::vector<int> seen(n_, 0);
    int tractors = 0;
    for (std::size_t r = 0; r < s.routes.size(); ++r) {
      const Route& route = s.routes[r];
      const int ri = static_cast<int>(r);
      const std::string problem = structure_problem(route);
      if (!problem.empty()) {
        out.push_back({"structure", ri, -1, problem});
        continue;
      }
      if (route_is_empty(route)) continue;
      ++tractors;
      for (std::size_t p = 1; p + 1 < route.size(); ++p) {
        const int node = route[p];
        if (kind_[node] == NodeKind::stand && ++seen[node] == 2) {
          out.push_back({"coverage", ri, static_cast<int>(p), "stand " + std::to_string(node) + " is visited more than once"});
        }
      }
      const RouteTrace t = simulate(route);
      const double eps = 1e-9;
      double soc = capacity_;
      for (std::size_t p = 1; p < t.visits.size(); ++p) {
        const Visit& v = t.visits[p];
        const int prev = t.visits[p - 1].node;
        if (v.soc_arrival < floor_ - eps) {
          out.push_back({"soc_floor", ri, static_cast<int>(p),
                         "charge on arrival at node " + std::to_string(v.node) + " is below 0.2B"});
        } else if (soc - leg_draw(prev, v.node) < floor_ - eps) {
          out.push_back({"soc_floor", ri, static_cast<int>(p),
                         "charge drops below 0.2B on the way to node " + std::to_string(v.node)});
        }
        if (settings_.windows == WindowMode::hard && v.kind == NodeKind::stand && v.delay > eps) {
          out.push_back({"window", ri, static_cast<int>(p),
                         "tractor reaches stand " + std::to_string(v.node) + " after its window closes"});
        }
        soc = v.soc_departure;
      }
    }
    for (int i = 0; i < n_; ++i) {
      if (kind_[i] == NodeKind::stand && seen[i] == 0) {
        out.push_back({"coverage", -1, -1, "stand " + std::to_string(i) + " is not served"});
      }
    }
    if (inst_->fleet_limit && tractors > *inst_->fleet_limit) {
      out.push_back({"fleet", -1, -1,
                     std::to_string(tractors) + " tractors exceed the fleet limit of " + std::to_string(*inst_->fleet_limit)});
    }
    return out;
  }

  /// Cost of a structurally valid solution; structure or coverage problems raise StructuralError.
  CostBreakdown total_cost(const Solution& s) const {
    for (const auto& v : check(s)) {
      if (v.rule == "structure" || v.rule == "coverage") throw StructuralError("total_cost: " + v.message);
    }
    return evaluate(s).cost;
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

  std::string structure_problem(const Route& route) const {
    if (route.size() < 2 || route.front() != 0 || route.back() != 0) return "route must start and end at the depot";
    for (std::size_t p = 1; p + 1 < route.size(); ++p) {
      const int node = route[p];
      if (node <= 0 || node >= n_) return "route visits unknown node " + std::to_string(node);
    }
    for (std::size_t p = 1; p < route.size(); ++p) {
      if (!std::isfinite(dist_[idx(route[p - 1], route[p])])) {
        return "no road from node " + std::to_string(route[p - 1]) + " to " + std::to_string(route[p]);
      }
    }
    return {};
  }

  RouteScore walk(const Route& route, RouteTrace* trace) const {
    const std::string problem = structure_problem(route);
    if (!problem.empty()) throw StructuralError(problem);
    const CostRates& c = inst_->costs;
    RouteScore sc;
    double clock = 0.0;
    double soc = capacity_;
    double charged = 0.0;
    double min_soc = capacity_;
    if (trace) {
      trace->visits.clear();
      Visit v;
      v.node = 0;
      v.kind = NodeKind::depot;
      v.soc_arrival = v.soc_departure = capacity_;
      trace->visits.push_back(v);
    }
    for (std::size_t p = 1; p < route.size(); ++p) {
      const int from = route[p - 1];
      const int to = route[p];
      const std::size_t k = idx(from, to);
      const double mid = soc - draw_[k];
      const double arrival = clock + time_[k];
      const double soc_arr = soc - energy_[k];
      sc.distance_m += dist_[k];
      sc.energy_kwh += energy_[k];
      min_soc = std::min({min_soc, mid, soc_arr});
      if (soc_arr < floor_ - 1e-9 || mid < floor_ - 1e-9) sc.soc_ok = false;

      Visit v;
      v.node = to;
      v.kind = kind_[to];
      v.arrival = v.start = v.departure = arrival;
      v.soc_arrival = v.soc_departure = soc_arr;
      if (kind_[to] == NodeKind::stand) {
        v.start = std::max(arrival, earliest_[to]);
        v.wait = std::max(earliest_[to] - arrival, 0.0);
        v.delay = std::max(arrival - latest_[to], 0.0);
        if (v.delay > 1e-9) sc.windows_ok = false;
        v.departure = v.start + svc_time_[to];
        v.soc_departure = soc_arr - svc_energy_[to];
        sc.energy_kwh += svc_energy_[to];
        sc.wait += v.wait;
        sc.delay += v.delay;
      } else if (kind_[to] == NodeKind::charger && soc_arr < target_) {
        const double minutes = charge_duration(soc_arr);
        v.departure = arrival + minutes;
        v.soc_departure = target_;
        charged += target_ - soc_arr;
        v.charge = ChargeEvent{to, soc_arr, target_, minutes};
      }
      clock = v.departure;
      soc = v.soc_departure;
      if (trace) trace->visits.push_back(v);
    }
    sc.end_time = clock;
    const double refill = capacity_ - soc;
    const bool nonempty = route.size() > 2;
    sc.cost.fixed = nonempty ? c.fixed_per_tractor : 0.0;
    sc.cost.charging = nonempty ? c.energy_per_kwh * (charged + refill) : 0.0;
    sc.cost.maintenance = c.maintenance_per_m * sc.distance_m;
    sc.cost.time_penalty = c.wait_per_min * sc.wait + c.delay_per_min * sc.delay;
    sc.cost.total = sc.cost.fixed + sc.cost.charging + sc.cost.maintenance + sc.cost.time_penalty;
    if (trace) {
      trace->distance_m = sc.distance_m;
      trace->energy_kwh = sc.energy_kwh;
      trace->charged_kwh = charged;
      trace->soc_return = soc;
      trace->min_soc = min_soc;
    }
    return sc;
  }

  const Instance* inst_;
  Strategy strategy_;
  EvalSettings settings_;
  int n_ = 0;
  double capacity_ = 0.0;
  double floor_ = 0.0;
  double target_ = 0.0;
  std::vector<double> time_;
  std::vector<double> energy_;
  std::vector<double> draw_;
  std::vector<double> dist_;
  std::vector<NodeKind> kind_;
  std::vector<double> svc_time_;
  std::vector<double> svc_energy_;
  std::vector<double> earliest_;
  std::vector<double> latest_;
};

// Free-function forms for one-off use.

inline RouteTrace simulate_route(const Route& route, const Instance& inst, const Strategy& s,
                                 EvalSettings settings = {}) {
  return Evaluator(inst, s, settings).simulate(route);
}

inline std::vector<Violation> check_feasibility(const Solution& sol, const Instance& inst, const Strategy& s,
                                                EvalSettings settings = {}) {
  return Evaluator(inst, s, settings).check(sol);
}

inline CostBreakdown total_cost(const Solution& sol, const Instance& inst, const Strategy& s,
                                EvalSettings settings = {}) {
  return Evaluator(inst, s, settings).total_cost(sol);
}

}  // namespace evtow
