#pragma once

// Piecewise linear charging. The state of charge rises at rate1 up to
// break1 * B, at rate2 up to break2 * B and at rate3 up to B.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "evtow/errors.hpp"

namespace evtow {

/// Minimum admissible state of charge as a fraction of capacity.
inline constexpr double kSocFloorFraction = 0.2;

struct ChargingCurve {
  double rate1 = 2.5;  // kWh/min
  double rate2 = 1.5;
  double rate3 = 0.325;
  double break1 = 0.84;  // fraction of capacity
  double break2 = 0.95;

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    if (!(rate1 > rate2 && rate2 > rate3 && rate3 > 0.0)) {
      out.emplace_back("charging rates must satisfy rate1 > rate2 > rate3 > 0");
    }
    if (!(0.0 < break1 && break1 < break2 && break2 < 1.0)) {
      out.emplace_back("charging breakpoints must satisfy 0 < break1 < break2 < 1");
    }
    return out;
  }

  bool operator==(const ChargingCurve&) const = default;
};

/// One stop at a charging station.
struct ChargeEvent {
  int station = -1;
  double soc_before = 0.0;  // kWh
  double soc_after = 0.0;   // kWh
  double duration_min = 0.0;
};

namespace detail {

struct CurveSegment {
  double lo;
  double hi;
  double rate;
};

inline std::array<CurveSegment, 3> segments(double capacity, const ChargingCurve& c) {
  return {{{0.0, c.break1 * capacity, c.rate1},
           {c.break1 * capacity, c.break2 * capacity, c.rate2},
           {c.break2 * capacity, capacity, c.rate3}}};
}

}  // namespace detail

/// Minutes to raise the state of charge from `from` to `to` kWh, for any
/// 0 <= from <= to <= capacity. Only the part of each segment above `from`
/// is charged.
inline double charge_minutes(double from, double to, double capacity, const ChargingCurve& c) {
  if (!(from >= 0.0 && from <= to && to <= capacity * (1.0 + 1e-12))) {
    throw DomainError("charge_minutes: need 0 <= from <= to <= capacity");
  }
  double minutes = 0.0;
  for (const auto& seg : detail::segments(capacity, c)) {
    const double lo = std::max(seg.lo, from);
    const double hi = std::min(seg.hi, to);
    if (hi > lo) minutes += (hi - lo) / seg.rate;
  }
  return minutes;
}

/// Charging duration (min) from p_start up to gamma * capacity.
inline double charging_time(double p_start, double gamma, double capacity, const ChargingCurve& c) {
  if (!(gamma > kSocFloorFraction && gamma <= 1.0)) {
    throw DomainError("charging_time: gamma must lie in (0.2, 1]");
  }
  const double target = gamma * capacity;
  if (p_start > target) throw DomainError("charging_time: battery already above the charge target");
  if (p_start < kSocFloorFraction * capacity) {
    throw DomainError("charging_time: starting charge below the 0.2B threshold");
  }
  return charge_minutes(p_start, target, capacity, c);
}

/// State of charge after charging for `elapsed` minutes from p_start; capped at capacity.
inline double soc_after(double p_start, double elapsed, double capacity, const ChargingCurve& c) {
  if (p_start < 0.0 || elapsed < 0.0) throw DomainError("soc_after: negative input");
  double soc = p_start;
  double left = elapsed;
  for (const auto& seg : detail::segments(capacity, c)) {
    if (soc >= seg.hi || left <= 0.0) continue;
    const double room = seg.hi - std::max(soc, seg.lo);
    const double need = room / seg.rate;
    if (left >= need) {
      soc = seg.hi;
      left -= need;
    } else {
      soc = std::max(soc, seg.lo) + left * seg.rate;
      left = 0.0;
    }
  }
  return std::min(soc, capacity);
}

/// (minutes, SoC) samples of charging an empty battery to full, every `step` minutes,
/// always including the segment corners and the end point.
inline std::vector<std::pair<double, double>> charge_curve_points(double capacity, const ChargingCurve& c,
                                                                  double step) {
  if (!(step > 0.0)) throw DomainError("charge curve step must be positive");
  const double total = charge_minutes(0.0, capacity, capacity, c);
  std::vector<double> times;
  for (double t = 0.0; t < total; t += step) times.push_back(t);
  times.push_back(charge_minutes(0.0, c.break1 * capacity, capacity, c));
  times.push_back(charge_minutes(0.0, c.break2 * capacity, capacity, c));
  times.push_back(total);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-9; }),
              times.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(times.size());
  for (double t : times) out.emplace_back(t, soc_after(0.0, t, capacity, c));
  return out;
}

}  // namespace evtow
