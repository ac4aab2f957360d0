#pragma once

// GA configuration as JSON. Every key is optional on input; output always
// lists every key so a manifest records the full configuration.

#include <string>

#include "evtow/errors.hpp"
#include "evtow/ga_solver.hpp"
#include "evtow/instance_io.hpp"

namespace evtow {

inline const char* to_string(PmOrientation o) { return o == PmOrientation::paper ? "paper" : "srinivas"; }

inline PmOrientation pm_orientation_from_string(const std::string& s) {
  if (s == "paper") return PmOrientation::paper;
  if (s == "srinivas") return PmOrientation::srinivas;
  throw ParseError("unknown pm_orientation '" + s + "'");
}

inline const char* to_string(RepairPolicy r) { return r == RepairPolicy::repair ? "repair" : "reject"; }

inline RepairPolicy repair_policy_from_string(const std::string& s) {
  if (s == "repair") return RepairPolicy::repair;
  if (s == "reject") return RepairPolicy::reject;
  throw ParseError("unknown repair policy '" + s + "'");
}

inline EnergyModelKind energy_model_from_string(const std::string& s) {
  if (s == "start_stop") return EnergyModelKind::start_stop;
  if (s == "traditional") return EnergyModelKind::traditional;
  throw ParseError("unknown energy model '" + s + "'");
}

inline const char* to_string(WindowMode w) { return w == WindowMode::soft ? "soft" : "hard"; }

inline WindowMode window_mode_from_string(const std::string& s) {
  if (s == "soft") return WindowMode::soft;
  if (s == "hard") return WindowMode::hard;
  throw ParseError("unknown window mode '" + s + "'");
}

inline Json config_to_json(const GAConfig& c) {
  Json j;
  j["population_size"] = c.population_size;
  j["max_iterations"] = c.max_iterations;
  j["generation_gap"] = c.generation_gap;
  j["pc"] = Json::array({c.pc.lo, c.pc.hi});
  j["pm"] = Json::array({c.pm.lo, c.pm.hi});
  j["repair"] = to_string(c.repair);
  j["pm_orientation"] = to_string(c.pm_orientation);
  j["acceptable_delay"] = c.acceptable_delay;
  j["hopeless_delay"] = c.hopeless_delay ? Json(*c.hopeless_delay) : Json(nullptr);
  j["energy_model"] = to_string(c.eval.energy);
  j["windows"] = to_string(c.eval.windows);
  return j;
}

inline GAConfig config_from_json(const Json& j, GAConfig c = {}) {
  if (!j.is_object()) throw ParseError("GA config must be a JSON object");
  static const char* known[] = {"population_size", "max_iterations", "generation_gap", "pc", "pm", "repair",
                                "pm_orientation", "acceptable_delay", "hopeless_delay", "energy_model", "windows"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ParseError("unknown GA config key '" + it.key() + "'");
  }
  auto range = [](const Json& r, const char* what) {
    if (!r.is_array() || r.size() != 2) throw ParseError(std::string(what) + " must be [lo, hi]");
    ProbabilityRange p{r[0].get<double>(), r[1].get<double>()};
    if (!(p.lo >= 0.0 && p.lo <= p.hi && p.hi <= 1.0)) throw ParseError(std::string(what) + " must satisfy 0 <= lo <= hi <= 1");
    return p;
  };
  try {
    c.population_size = detail::get_or(j, "population_size", c.population_size);
    c.max_iterations = detail::get_or(j, "max_iterations", c.max_iterations);
    c.generation_gap = detail::get_or(j, "generation_gap", c.generation_gap);
    if (j.contains("pc")) c.pc = range(j["pc"], "pc");
    if (j.contains("pm")) c.pm = range(j["pm"], "pm");
    if (j.contains("repair")) c.repair = repair_policy_from_string(j["repair"].get<std::string>());
    if (j.contains("pm_orientation")) c.pm_orientation = pm_orientation_from_string(j["pm_orientation"].get<std::string>());
    c.acceptable_delay = detail::get_or(j, "acceptable_delay", c.acceptable_delay);
    if (auto it = j.find("hopeless_delay"); it != j.end()) {
      c.hopeless_delay = it->is_null() ? std::nullopt : std::optional<double>(it->get<double>());
    }
    if (j.contains("energy_model")) c.eval.energy = energy_model_from_string(j["energy_model"].get<std::string>());
    if (j.contains("windows")) c.eval.windows = window_mode_from_string(j["windows"].get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed GA config: ") + e.what());
  }
  if (c.population_size < 2) throw ParseError("population_size must be at least 2");
  if (c.max_iterations < 0) throw ParseError("max_iterations must be nonnegative");
  if (!(c.generation_gap > 0.0 && c.generation_gap <= 1.0)) throw ParseError("generation_gap must lie in (0, 1]");
  return c;
}

inline GAConfig load_config(const std::string& path) {
  return config_from_json(detail::parse_json(detail::read_file(path), "GA config"));
}

}  // namespace evtow
