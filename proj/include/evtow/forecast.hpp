#pragma once

// Flight-scale forecast for two terminals: terminal 1 recovers then grows at
// its saturated rate, terminal 2 recovers at a tapering rate and absorbs the
// growth terminal 1 can no longer take.

#include <cmath>

namespace evtow {

struct ForecastRates {
  double normal = 0.14;       // pre-pandemic annual growth
  double recovery1 = 0.12;    // first-year recovery, terminal 1
  double recovery2 = 0.30;    // first-year recovery, terminal 2
  double taper = 0.06;        // yearly decline of terminal 2's recovery rate
  double saturated = 0.07;    // growth of a saturated terminal
};

struct Forecast {
  double t1_short = 0.0;
  double t2_short = 0.0;
  double t1_mid = 0.0;
  double t2_mid = 0.0;
};

inline Forecast forecast_flights(double t1_current, double t2_current, const ForecastRates& r = {}) {
  Forecast f;
  f.t1_short = t1_current * (1.0 + r.recovery1) * (1.0 + r.saturated) * (1.0 + r.saturated);
  f.t2_short = t2_current * (1.0 + r.recovery2) * (1.0 + r.recovery2 - r.taper) *
               (1.0 + r.recovery2 - 2.0 * r.taper);
  f.t1_mid = f.t1_short * (1.0 + r.saturated) * (1.0 + r.saturated);
  const double growth = (1.0 + r.normal) * (1.0 + r.normal);
  f.t2_mid = f.t2_short * growth + f.t1_short * growth - f.t1_mid;
  return f;
}

/// Scenario size used for simulation: the forecast rounded to the nearest ten.
inline int round_to_ten(double flights) { return static_cast<int>(std::lround(flights / 10.0)) * 10; }

}  // namespace evtow
