#pragma once

// JSON files for instances, turnaround templates and plain-text solution files.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "evtow/errors.hpp"
#include "evtow/instance.hpp"
#include "evtow/temporal_windows.hpp"

namespace evtow {

using Json = nlohmann::ordered_json;

inline constexpr const char* kInstanceSchema = "evtow.instance/1";
inline constexpr const char* kTemplateSchema = "evtow.template/1";

namespace detail {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  return it->template get<T>();
}

inline const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

inline Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

}  // namespace detail

inline Json vehicle_to_json(const VehicleParams& v) {
  Json j;
  j["rolling_friction"] = v.rolling_friction;
  j["mass_kg"] = v.mass_kg;
  j["gravity"] = v.gravity;
  j["air_density"] = v.air_density;
  j["frontal_area"] = v.frontal_area;
  j["drag_coeff"] = v.drag_coeff;
  j["travel_accel"] = v.travel_accel;
  j["towing_accel"] = v.towing_accel;
  j["towing_speed_mps"] = v.towing_speed;
  j["towing_distance"] = v.towing_distance;
  j["motor_out_eff"] = v.motor_out_eff;
  j["motor_in_eff"] = v.motor_in_eff;
  j["battery_out_eff"] = v.battery_out_eff;
  j["battery_in_eff"] = v.battery_in_eff;
  j["battery_capacity_kwh"] = v.battery_capacity_kwh;
  return j;
}

inline VehicleParams vehicle_from_json(const Json& j) {
  VehicleParams v;
  v.rolling_friction = detail::get_or(j, "rolling_friction", v.rolling_friction);
  v.mass_kg = detail::get_or(j, "mass_kg", v.mass_kg);
  v.gravity = detail::get_or(j, "gravity", v.gravity);
  v.air_density = detail::get_or(j, "air_density", v.air_density);
  v.frontal_area = detail::get_or(j, "frontal_area", v.frontal_area);
  v.drag_coeff = detail::get_or(j, "drag_coeff", v.drag_coeff);
  v.travel_accel = detail::get_or(j, "travel_accel", v.travel_accel);
  v.towing_accel = detail::get_or(j, "towing_accel", v.towing_accel);
  v.towing_speed = detail::get_or(j, "towing_speed_mps", v.towing_speed);
  v.towing_distance = detail::get_or(j, "towing_distance", v.towing_distance);
  v.motor_out_eff = detail::get_or(j, "motor_out_eff", v.motor_out_eff);
  v.motor_in_eff = detail::get_or(j, "motor_in_eff", v.motor_in_eff);
  v.battery_out_eff = detail::get_or(j, "battery_out_eff", v.battery_out_eff);
  v.battery_in_eff = detail::get_or(j, "battery_in_eff", v.battery_in_eff);
  v.battery_capacity_kwh = detail::get_or(j, "battery_capacity_kwh", v.battery_capacity_kwh);
  return v;
}

inline Json charging_to_json(const ChargingCurve& c) {
  Json j;
  j["rate1"] = c.rate1;
  j["rate2"] = c.rate2;
  j["rate3"] = c.rate3;
  j["break1"] = c.break1;
  j["break2"] = c.break2;
  return j;
}

inline ChargingCurve charging_from_json(const Json& j) {
  ChargingCurve c;
  c.rate1 = detail::get_or(j, "rate1", c.rate1);
  c.rate2 = detail::get_or(j, "rate2", c.rate2);
  c.rate3 = detail::get_or(j, "rate3", c.rate3);
  c.break1 = detail::get_or(j, "break1", c.break1);
  c.break2 = detail::get_or(j, "break2", c.break2);
  return c;
}

inline Json costs_to_json(const CostRates& c) {
  Json j;
  j["fixed_per_tractor"] = c.fixed_per_tractor;
  j["energy_per_kwh"] = c.energy_per_kwh;
  j["maintenance_per_m"] = c.maintenance_per_m;
  j["wait_per_min"] = c.wait_per_min;
  j["delay_per_min"] = c.delay_per_min;
  return j;
}

inline CostRates costs_from_json(const Json& j) {
  CostRates c;
  c.fixed_per_tractor = detail::get_or(j, "fixed_per_tractor", c.fixed_per_tractor);
  c.energy_per_kwh = detail::get_or(j, "energy_per_kwh", c.energy_per_kwh);
  c.maintenance_per_m = detail::get_or(j, "maintenance_per_m", c.maintenance_per_m);
  c.wait_per_min = detail::get_or(j, "wait_per_min", c.wait_per_min);
  c.delay_per_min = detail::get_or(j, "delay_per_min", c.delay_per_min);
  return c;
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["schema"] = kInstanceSchema;
  j["name"] = inst.name;
  j["fleet_limit"] = inst.fleet_limit ? Json(*inst.fleet_limit) : Json(nullptr);
  Json nodes = Json::array();
  for (const auto& n : inst.nodes) {
    Json jn;
    jn["id"] = n.id;
    jn["kind"] = to_string(n.kind);
    if (n.has_position) {
      jn["x"] = n.x;
      jn["y"] = n.y;
    }
    if (n.physical_stand) jn["physical_stand"] = *n.physical_stand;
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  Json rows = Json::array();
  for (const auto& row : inst.distance) {
    Json r = Json::array();
    for (double d : row) r.push_back(std::isfinite(d) ? Json(d) : Json(nullptr));
    rows.push_back(std::move(r));
  }
  j["distances"] = std::move(rows);
  Json flights = Json::array();
  for (const auto& f : inst.flights) {
    Json jf;
    jf["id"] = f.id;
    jf["stand"] = f.stand;
    jf["class"] = to_string(f.profile.cls);
    jf["mass_kg"] = f.profile.mass_kg;
    jf["air_kw"] = f.profile.air_kw;
    jf["lighting_kw"] = f.profile.lighting_kw;
    jf["launch_kw"] = f.profile.launch_kw;
    jf["air_min"] = f.profile.air_min;
    jf["lighting_min"] = f.profile.lighting_min;
    jf["launch_min"] = f.profile.launch_min;
    jf["arrival"] = f.arrival;
    jf["departure"] = f.departure;
    jf["earliest"] = f.earliest;
    jf["latest"] = f.latest;
    flights.push_back(std::move(jf));
  }
  j["flights"] = std::move(flights);
  j["vehicle"] = vehicle_to_json(inst.vehicle);
  j["charging"] = charging_to_json(inst.charging);
  j["costs"] = costs_to_json(inst.costs);
  return j;
}

inline Instance instance_from_json(const Json& j) {
  try {
    const std::string schema = detail::require(j, "schema").get<std::string>();
    if (schema != kInstanceSchema) throw ParseError("unsupported instance schema '" + schema + "'");
    Instance inst;
    inst.name = detail::get_or<std::string>(j, "name", "");
    if (auto it = j.find("fleet_limit"); it != j.end() && !it->is_null()) inst.fleet_limit = it->get<int>();
    for (const auto& jn : detail::require(j, "nodes")) {
      Node n;
      n.id = detail::require(jn, "id").get<int>();
      n.kind = node_kind_from_string(detail::require(jn, "kind").get<std::string>());
      if (jn.contains("x") && jn.contains("y")) {
        n.has_position = true;
        n.x = jn["x"].get<double>();
        n.y = jn["y"].get<double>();
      }
      if (auto it = jn.find("physical_stand"); it != jn.end() && !it->is_null()) n.physical_stand = it->get<int>();
      inst.nodes.push_back(n);
    }
    if (auto it = j.find("distances"); it != j.end() && !it->is_null()) {
      for (const auto& row : *it) {
        std::vector<double> r;
        for (const auto& d : row) r.push_back(d.is_null() ? std::numeric_limits<double>::infinity() : d.get<double>());
        inst.distance.push_back(std::move(r));
      }
    } else {
      inst.distance = euclidean_distances(inst.nodes);
    }
    for (const auto& jf : detail::require(j, "flights")) {
      Flight f;
      f.id = detail::require(jf, "id").get<std::string>();
      f.stand = detail::require(jf, "stand").get<int>();
      const AircraftClass cls = aircraft_class_from_string(detail::get_or<std::string>(jf, "class", "medium"));
      const AircraftServiceProfile d = AircraftServiceProfile::defaults(cls);
      f.profile.cls = cls;
      f.profile.mass_kg = detail::get_or(jf, "mass_kg", d.mass_kg);
      f.profile.air_kw = detail::get_or(jf, "air_kw", d.air_kw);
      f.profile.lighting_kw = detail::get_or(jf, "lighting_kw", d.lighting_kw);
      f.profile.launch_kw = detail::get_or(jf, "launch_kw", d.launch_kw);
      f.profile.air_min = detail::get_or(jf, "air_min", d.air_min);
      f.profile.lighting_min = detail::get_or(jf, "lighting_min", d.lighting_min);
      f.profile.launch_min = detail::get_or(jf, "launch_min", d.launch_min);
      f.arrival = detail::require(jf, "arrival").get<double>();
      f.departure = detail::require(jf, "departure").get<double>();
      f.earliest = detail::require(jf, "earliest").get<double>();
      f.latest = detail::require(jf, "latest").get<double>();
      inst.flights.push_back(std::move(f));
    }
    if (auto it = j.find("vehicle"); it != j.end()) inst.vehicle = vehicle_from_json(*it);
    if (auto it = j.find("charging"); it != j.end()) inst.charging = charging_from_json(*it);
    if (auto it = j.find("costs"); it != j.end()) inst.costs = costs_from_json(*it);
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed instance: ") + e.what());
  }
}

inline std::string instance_to_text(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline Instance instance_from_text(const std::string& text) {
  return instance_from_json(detail::parse_json(text, "instance"));
}

inline Instance load_instance(const std::string& path) {
  return instance_from_text(detail::read_file(path));
}

inline void save_instance(const Instance& inst, const std::string& path) {
  detail::write_file(path, instance_to_text(inst));
}

inline Json template_to_json(const TurnaroundTemplate& t) {
  Json j;
  j["schema"] = kTemplateSchema;
  j["towing_activity"] = t.towing_activity;
  Json acts = Json::array();
  for (const auto& a : t.activities) {
    Json ja;
    ja["name"] = a.name;
    ja["anchored"] = a.anchored;
    Json bands = Json::array();
    for (const auto& b : a.bands) {
      Json jb;
      jb["transit_from"] = b.transit_from;
      jb["transit_to"] = b.transit_to ? Json(*b.transit_to) : Json(nullptr);
      jb["min"] = b.min_duration;
      jb["max"] = b.max_duration;
      bands.push_back(std::move(jb));
    }
    ja["bands"] = std::move(bands);
    acts.push_back(std::move(ja));
  }
  j["activities"] = std::move(acts);
  Json prec = Json::array();
  for (const auto& [b, a] : t.precedence) prec.push_back(Json::array({b, a}));
  j["precedence"] = std::move(prec);
  return j;
}

inline TurnaroundTemplate template_from_json(const Json& j) {
  try {
    const std::string schema = detail::require(j, "schema").get<std::string>();
    if (schema != kTemplateSchema) throw ParseError("unsupported template schema '" + schema + "'");
    TurnaroundTemplate t;
    t.towing_activity = detail::get_or<std::string>(j, "towing_activity", "towing");
    for (const auto& ja : detail::require(j, "activities")) {
      Activity a;
      a.name = detail::require(ja, "name").get<std::string>();
      a.anchored = detail::get_or(ja, "anchored", false);
      for (const auto& jb : detail::require(ja, "bands")) {
        DurationBand b;
        b.transit_from = detail::get_or(jb, "transit_from", 0);
        if (auto it = jb.find("transit_to"); it != jb.end() && !it->is_null()) b.transit_to = it->get<int>();
        b.min_duration = detail::require(jb, "min").get<int>();
        b.max_duration = detail::require(jb, "max").get<int>();
        a.bands.push_back(b);
      }
      t.activities.push_back(std::move(a));
    }
    for (const auto& p : detail::require(j, "precedence")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("precedence entries must be [before, after] pairs");
      t.precedence.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    const auto problems = t.validate();
    if (!problems.empty()) throw StructuralError("invalid turnaround template: " + problems.front());
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed template: ") + e.what());
  }
}

inline TurnaroundTemplate load_template(const std::string& path) {
  return template_from_json(detail::parse_json(detail::read_file(path), "template"));
}

inline void save_template(const TurnaroundTemplate& t, const std::string& path) {
  detail::write_file(path, template_to_json(t).dump(2) + "\n");
}

/// Solution files hold one route per line as whitespace-separated node ids;
/// blank lines and lines starting with '#' are ignored.
inline std::vector<std::vector<int>> routes_from_text(const std::string& text) {
  std::vector<std::vector<int>> routes;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<int> route;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        const int id = std::stoi(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        route.push_back(id);
      } catch (const std::exception&) {
        throw ParseError("solution line " + std::to_string(lineno) + ": '" + tok + "' is not a node id");
      }
    }
    routes.push_back(std::move(route));
  }
  return routes;
}

inline std::string routes_to_text(const std::vector<std::vector<int>>& routes) {
  std::string out;
  for (const auto& r : routes) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(r[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace evtow
