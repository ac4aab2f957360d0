#pragma once

// Longitudinal energy model of an electric aircraft tractor.
//
// Mechanical work is converted to battery energy through the motor and
// battery efficiency chains: positive work is amplified by the discharge
// chain, negative work (braking) is returned through the recuperation chain.
// Travel between nodes follows a trapezoidal speed profile: accelerate at a
// constant rate to the peak speed, cruise, then decelerate to a stop. Road
// gradient is taken as zero.
//
// Units: metres, seconds and m/s inside the physics; kWh for energy and
// minutes for every model-level duration.

#include <cmath>
#include <string>
#include <vector>

#include "evtow/errors.hpp"

namespace evtow {

inline constexpr double kJouleToKwh = 1.0 / 3'600'000.0;

constexpr double kmh_to_mps(double kmh) { return kmh / 3.6; }

/// Tractor physics and efficiency constants.
struct VehicleParams {
  double rolling_friction = 0.03;       // Cr
  double mass_kg = 15300.0;             // m
  double gravity = 9.81;                // g, N/kg
  double air_density = 1.2041;          // rho, kg/m^3
  double frontal_area = 3.912;          // A, m^2
  double drag_coeff = 0.7;              // Cd
  double travel_accel = 0.8;            // a, m/s^2
  double towing_accel = 0.6;            // m/s^2
  double towing_speed = kmh_to_mps(10); // u, m/s
  double towing_distance = 50.0;        // w, m
  double motor_out_eff = 1.184692;
  double motor_in_eff = 0.846055;
  double battery_out_eff = 1.112434;
  double battery_in_eff = 0.928465;
  double battery_capacity_kwh = 150.0;  // B

  double discharge_factor() const { return motor_out_eff * battery_out_eff; }
  double recuperation_factor() const { return motor_in_eff * battery_in_eff; }

  /// Half rho A Cd, the coefficient of v^2 in the drag force.
  double drag_factor() const { return 0.5 * air_density * frontal_area * drag_coeff; }

  bool operator==(const VehicleParams&) const = default;

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    const std::pair<const char*, double> positive[] = {
        {"rolling_friction", rolling_friction}, {"mass_kg", mass_kg},
        {"gravity", gravity},                   {"air_density", air_density},
        {"frontal_area", frontal_area},         {"drag_coeff", drag_coeff},
        {"travel_accel", travel_accel},         {"towing_accel", towing_accel},
        {"towing_speed", towing_speed},         {"towing_distance", towing_distance},
        {"motor_out_eff", motor_out_eff},       {"motor_in_eff", motor_in_eff},
        {"battery_out_eff", battery_out_eff},   {"battery_in_eff", battery_in_eff},
        {"battery_capacity_kwh", battery_capacity_kwh}};
    for (const auto& [name, value] : positive) {
      if (!(value > 0.0) || !std::isfinite(value)) {
        out.push_back(std::string("vehicle.") + name + " must be positive");
      }
    }
    if (!(recuperation_factor() < 1.0 && 1.0 < discharge_factor())) {
      out.emplace_back("vehicle efficiencies must satisfy in_chain < 1 < out_chain");
    }
    return out;
  }
};

enum class AircraftClass { medium, heavy, super_heavy };

inline const char* to_string(AircraftClass c) {
  switch (c) {
    case AircraftClass::medium: return "medium";
    case AircraftClass::heavy: return "heavy";
    case AircraftClass::super_heavy: return "super_heavy";
  }
  return "medium";
}

inline AircraftClass aircraft_class_from_string(const std::string& s) {
  if (s == "medium") return AircraftClass::medium;
  if (s == "heavy") return AircraftClass::heavy;
  if (s == "super_heavy") return AircraftClass::super_heavy;
  throw ParseError("unknown aircraft class '" + s + "'");
}

/// What a tractor does for one aircraft: tow it over the towing distance,
/// then stand in for the APU (air conditioning, lighting, engine start).
struct AircraftServiceProfile {
  AircraftClass cls = AircraftClass::medium;
  double mass_kg = 0.0;
  double air_kw = 0.0;
  double lighting_kw = 0.0;
  double launch_kw = 0.0;
  double air_min = 0.0;
  double lighting_min = 0.0;
  double launch_min = 0.0;

  /// Class defaults. Rates and durations are the published per-class values;
  /// the masses are representative figures for each weight class.
  static AircraftServiceProfile defaults(AircraftClass c) {
    switch (c) {
      case AircraftClass::medium:
        return {c, 75'000.0, 175.0, 3.7, 384.0, 2.0, 2.0, 0.75};
      case AircraftClass::heavy:
        return {c, 180'000.0, 300.0, 14.1, 783.0, 2.0, 2.0, 0.75};
      case AircraftClass::super_heavy:
        return {c, 350'000.0, 350.0, 33.9, 783.0, 2.0, 2.0, 0.75};
    }
    return {};
  }

  bool operator==(const AircraftServiceProfile&) const = default;
};

/// Battery-side energy of the three motion phases, kWh.
struct PhaseEnergy {
  double accel = 0.0;
  double cruise = 0.0;
  double decel = 0.0;
  double total() const { return accel + cruise + decel; }
};

/// Instantaneous mechanical power (W) at speed v and acceleration a.
inline double mech_power(double speed, double accel, const VehicleParams& p) {
  if (speed < 0.0) throw DomainError("mech_power: negative speed");
  return p.rolling_friction * p.mass_kg * p.gravity * speed + p.drag_factor() * speed * speed * speed +
         p.mass_kg * accel * speed;
}

/// Power drawn from (positive) or returned to (negative) the battery for a
/// given mechanical power. Also valid for energies, the map being linear per sign.
inline double battery_power(double p_mech, const VehicleParams& p) {
  return p_mech >= 0.0 ? p_mech * p.discharge_factor() : p_mech * p.recuperation_factor();
}

namespace detail {

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be positive");
}

// Trapezoidal profile for a body of `mass` over `distance` with peak speed
// `peak` and ramp acceleration `accel`. The ramp phases use half the squared
// peak speed in the drag term. When the ramps do not fit the profile becomes
// triangular with peak sqrt(accel * distance).
inline PhaseEnergy trapezoid(double distance, double peak, double accel, double mass,
                             const VehicleParams& p) {
  require_positive(distance, "distance");
  require_positive(peak, "speed");
  require_positive(accel, "acceleration");
  double v = peak;
  double cruise_len = distance - v * v / accel;
  if (cruise_len < 0.0) {
    v = std::sqrt(accel * distance);
    cruise_len = 0.0;
  }
  const double roll = p.rolling_friction * mass * p.gravity;
  const double ramp_len = v * v / (2.0 * accel);
  const double ramp_drag = p.drag_factor() * v * v / 2.0;
  const double cruise_drag = p.drag_factor() * v * v;

  PhaseEnergy e;
  e.accel = battery_power((roll + ramp_drag + mass * accel) * ramp_len, p) * kJouleToKwh;
  e.cruise = battery_power((roll + cruise_drag) * cruise_len, p) * kJouleToKwh;
  e.decel = battery_power((roll + ramp_drag - mass * accel) * ramp_len, p) * kJouleToKwh;
  return e;
}

}  // namespace detail

/// Phase breakdown of a start-stop trip of length l (m) at peak speed v (m/s).
inline PhaseEnergy travel_phases(double l, double v, const VehicleParams& p) {
  return detail::trapezoid(l, v, p.travel_accel, p.mass_kg, p);
}

/// Start-stop travel energy (kWh) between two nodes l metres apart.
inline double travel_segment_energy(double l, double v, const VehicleParams& p) {
  return travel_phases(l, v, p).total();
}

/// Same trip with an explicit ramp acceleration, used to cross-check towing.
inline double travel_segment_energy(double l, double v, double accel, const VehicleParams& p) {
  return detail::trapezoid(l, v, accel, p.mass_kg, p).total();
}

/// Constant-speed baseline: no ramps, no recuperation.
inline double traditional_energy(double l, double v, const VehicleParams& p) {
  if (l < 0.0) throw DomainError("traditional_energy: negative distance");
  if (v < 0.0) throw DomainError("traditional_energy: negative speed");
  const double force = p.rolling_friction * p.mass_kg * p.gravity + p.drag_factor() * v * v;
  return force * l * p.discharge_factor() * kJouleToKwh;
}

/// Cumulative start-stop energy after l_partial metres of a 100 m segment.
inline double cumulative_profile(double l_partial, double v, const VehicleParams& p) {
  constexpr double kSegment = 100.0;
  if (l_partial < 0.0 || l_partial > kSegment) {
    throw DomainError("cumulative_profile: distance outside [0, 100] m");
  }
  detail::require_positive(v, "speed");
  const double a = p.travel_accel;
  const double ramp = v * v / (2.0 * a);
  if (2.0 * ramp > kSegment) throw DomainError("cumulative_profile: ramps longer than the segment");

  const double roll = p.rolling_friction * p.mass_kg * p.gravity;
  const double accel_force = roll + p.drag_factor() * v * v / 2.0 + p.mass_kg * a;
  const double cruise_force = roll + p.drag_factor() * v * v;
  const double decel_force = roll + p.drag_factor() * v * v / 2.0 - p.mass_kg * a;
  auto to_kwh = [&](double joules) { return battery_power(joules, p) * kJouleToKwh; };

  if (l_partial < ramp) return to_kwh(accel_force * l_partial);
  const double after_accel = to_kwh(accel_force * ramp);
  if (l_partial < kSegment - ramp) return after_accel + to_kwh(cruise_force * (l_partial - ramp));
  const double after_cruise = after_accel + to_kwh(cruise_force * (kSegment - 2.0 * ramp));
  return after_cruise + to_kwh(decel_force * (l_partial - kSegment + ramp));
}

/// Phase breakdown of towing the aircraft over the towing distance.
inline PhaseEnergy towing_phases(const AircraftServiceProfile& profile, const VehicleParams& p) {
  const double u = p.towing_speed;
  const double eps = p.towing_accel;
  detail::require_positive(u, "towing speed");
  detail::require_positive(eps, "towing acceleration");
  if (!(p.towing_distance > u * u / eps)) {
    throw DomainError("towing distance too short for the towing speed profile");
  }
  if (profile.mass_kg < 0.0) throw DomainError("aircraft mass must be nonnegative");
  return detail::trapezoid(p.towing_distance, u, eps, p.mass_kg + profile.mass_kg, p);
}

inline double towing_energy(const AircraftServiceProfile& profile, const VehicleParams& p) {
  return towing_phases(profile, p).total();
}

/// Energy spent standing in for the aircraft APU, kWh.
inline double apu_energy(const AircraftServiceProfile& s) {
  return (s.air_kw * s.air_min + s.lighting_kw * s.lighting_min + s.launch_kw * s.launch_min) / 60.0;
}

inline double service_energy(const AircraftServiceProfile& s, const VehicleParams& p) {
  return towing_energy(s, p) + apu_energy(s);
}

/// Minutes a tractor spends at a stand: towing kinematics plus APU duties.
inline double service_time(const AircraftServiceProfile& s, const VehicleParams& p) {
  const double u = p.towing_speed;
  return (p.towing_distance / u + u / p.towing_accel) / 60.0 + s.air_min + s.lighting_min + s.launch_min;
}

/// Travel minutes for l metres at peak speed v: cruise time plus the ramp overhead.
inline double travel_time(double l, double v, const VehicleParams& p) {
  if (l < 0.0) throw DomainError("travel_time: negative distance");
  detail::require_positive(v, "speed");
  return (l / v + v / p.travel_accel) / 60.0;
}

}  // namespace evtow
