#pragma once

// Towing time windows from a turnaround activity template.
//
// Every applicable activity contributes a start and an end event; the
// reference event x0 is the scheduled arrival. Durations, precedence and the
// departure deadline become difference constraints x_j - x_i <= b, i.e. edges
// of a distance graph. All-pairs shortest paths on that graph give the
// tightest bound on every difference, or a negative cycle when the template
// cannot be met within the transit time.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evtow/errors.hpp"

namespace evtow {

/// Duration bounds (min) that apply while transit time is in [transit_from, transit_to).
struct DurationBand {
  int transit_from = 0;
  std::optional<int> transit_to;  // open-ended when empty
  int min_duration = 0;
  int max_duration = 0;

  bool covers(int transit) const {
    return transit >= transit_from && (!transit_to || transit < *transit_to);
  }
  bool operator==(const DurationBand&) const = default;
};

struct Activity {
  std::string name;
  /// Starts exactly at the scheduled arrival; its start event is x0 itself.
  bool anchored = false;
  std::vector<DurationBand> bands;

  const DurationBand* band_for(int transit) const {
    for (const auto& b : bands) {
      if (b.covers(transit)) return &b;
    }
    return nullptr;
  }
  bool operator==(const Activity&) const = default;
};

struct TurnaroundTemplate {
  std::vector<Activity> activities;
  std::vector<std::pair<std::string, std::string>> precedence;  // (before, after)
  std::string towing_activity = "towing";

  const Activity* find(const std::string& name) const {
    for (const auto& a : activities) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> out;
    std::set<std::string> names;
    for (const auto& a : activities) {
      if (!names.insert(a.name).second) out.push_back("duplicate activity '" + a.name + "'");
      for (const auto& b : a.bands) {
        if (b.min_duration < 0 || b.min_duration > b.max_duration) {
          out.push_back("activity '" + a.name + "' has a band with min > max");
        }
      }
    }
    for (const auto& [before, after] : precedence) {
      if (!names.count(before) || !names.count(after)) {
        out.push_back("precedence " + before + " -> " + after + " names an unknown activity");
      }
    }
    if (has_cycle()) out.emplace_back("precedence graph has a cycle");
    return out;
  }

  bool has_cycle() const {
    std::map<std::string, std::vector<std::string>> next;
    for (const auto& [b, a] : precedence) next[b].push_back(a);
    std::map<std::string, int> state;  // 0 new, 1 open, 2 done
    bool cyclic = false;
    auto visit = [&](auto&& self, const std::string& n) -> void {
      state[n] = 1;
      for (const auto& m : next[n]) {
        if (state[m] == 1) cyclic = true;
        if (state[m] == 0) self(self, m);
      }
      state[n] = 2;
    };
    for (const auto& a : activities) {
      if (state[a.name] == 0) visit(visit, a.name);
    }
    return cyclic;
  }

  bool operator==(const TurnaroundTemplate&) const = default;
};

/// Difference constraint x[to] - x[from] <= bound.
struct StnConstraint {
  int from = 0;
  int to = 0;
  std::int64_t bound = 0;
};

struct Stn {
  std::vector<std::string> variables;  // index 0 is the reference event
  std::vector<StnConstraint> constraints;
  std::map<std::string, int> start_of;
  std::map<std::string, int> end_of;
  int transit = 0;

  int size() const { return static_cast<int>(variables.size()); }
};

inline constexpr std::int64_t kStnInfinity = std::numeric_limits<std::int64_t>::max() / 4;

/// Tightest bounds: d[i][j] bounds x_j - x_i from above.
struct StnMinimization {
  bool consistent = true;
  std::vector<std::vector<std::int64_t>> d;
  std::vector<int> witness_cycle;  // variable indices along a negative cycle

  std::int64_t upper(int i, int j) const { return d[i][j]; }
  std::int64_t lower(int i, int j) const { return -d[j][i]; }
};

/// Builds the network for one flight with the given transit time (departure - arrival).
inline Stn build_stn(int transit, const TurnaroundTemplate& tpl) {
  if (transit <= 0) throw DomainError("build_stn: transit time must be positive");
  if (tpl.has_cycle()) throw StructuralError("build_stn: turnaround template has a precedence cycle");

  Stn stn;
  stn.transit = transit;
  stn.variables.emplace_back("arrival");
  std::vector<const Activity*> used;
  for (const auto& a : tpl.activities) {
    const DurationBand* band = a.band_for(transit);
    if (band == nullptr) continue;
    used.push_back(&a);
    if (a.anchored) {
      stn.start_of[a.name] = 0;
    } else {
      stn.start_of[a.name] = stn.size();
      stn.variables.push_back(a.name + ".start");
    }
    stn.end_of[a.name] = stn.size();
    stn.variables.push_back(a.name + ".end");
  }

  auto add = [&](int from, int to, std::int64_t b) { stn.constraints.push_back({from, to, b}); };
  std::set<std::string> has_pred;
  std::set<std::string> has_succ;
  for (const auto& [before, after] : tpl.precedence) {
    if (!stn.start_of.count(before) || !stn.start_of.count(after)) continue;
    has_pred.insert(after);
    has_succ.insert(before);
  }

  for (const Activity* a : used) {
    const DurationBand* band = a->band_for(transit);
    const int s = stn.start_of[a->name];
    const int e = stn.end_of[a->name];
    add(s, e, band->max_duration);
    add(e, s, -static_cast<std::int64_t>(band->min_duration));
    if (!a->anchored && !has_pred.count(a->name)) add(s, 0, 0);
  }
  for (const auto& [before, after] : tpl.precedence) {
    if (!stn.start_of.count(before) || !stn.start_of.count(after)) continue;
    add(stn.start_of[after], stn.end_of[before], 0);
  }
  for (const Activity* a : used) {
    if (!has_succ.count(a->name)) add(0, stn.end_of[a->name], transit);
  }
  return stn;
}

namespace detail {

// Bellman-Ford from a virtual source joined to every variable; returns the
// variables of one negative cycle, or an empty vector.
inline std::vector<int> negative_cycle(const Stn& stn) {
  const int n = stn.size();
  std::vector<std::int64_t> dist(n, 0);
  std::vector<int> pred(n, -1);
  int last = -1;
  for (int round = 0; round < n; ++round) {
    last = -1;
    for (const auto& c : stn.constraints) {
      if (dist[c.from] + c.bound < dist[c.to]) {
        dist[c.to] = dist[c.from] + c.bound;
        pred[c.to] = c.from;
        last = c.to;
      }
    }
    if (last < 0) return {};
  }
  int v = last;
  for (int i = 0; i < n; ++i) v = pred[v];
  std::vector<int> cycle{v};
  for (int u = pred[v]; u != v; u = pred[u]) cycle.push_back(u);
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace detail

/// All-pairs shortest paths (Floyd-Warshall) on the distance graph.
inline StnMinimization minimize_stn(const Stn& stn) {
  const int n = stn.size();
  StnMinimization out;
  out.d.assign(n, std::vector<std::int64_t>(n, kStnInfinity));
  for (int i = 0; i < n; ++i) out.d[i][i] = 0;
  for (const auto& c : stn.constraints) {
    if (c.from < 0 || c.from >= n || c.to < 0 || c.to >= n) {
      throw StructuralError("minimize_stn: constraint refers to an unknown variable");
    }
    out.d[c.from][c.to] = std::min(out.d[c.from][c.to], c.bound);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (out.d[i][k] >= kStnInfinity) continue;
      for (int j = 0; j < n; ++j) {
        if (out.d[k][j] >= kStnInfinity) continue;
        out.d[i][j] = std::min(out.d[i][j], out.d[i][k] + out.d[k][j]);
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    if (out.d[i][i] < 0) {
      out.consistent = false;
      out.witness_cycle = detail::negative_cycle(stn);
      break;
    }
  }
  return out;
}

/// Towing service window in absolute minutes.
struct TowingWindow {
  double earliest = 0.0;
  double latest = 0.0;
};

inline TowingWindow towing_window(const Stn& stn, const StnMinimization& m, double arrival,
                                  const std::string& towing = "towing") {
  if (!m.consistent) throw InfeasibleError("towing_window: inconsistent temporal network");
  auto it = stn.start_of.find(towing);
  if (it == stn.start_of.end()) throw StructuralError("towing_window: no '" + towing + "' activity");
  const int s = it->second;
  return {arrival + static_cast<double>(m.lower(0, s)), arrival + static_cast<double>(m.upper(0, s))};
}

/// Convenience: build, minimize and read the towing window for one flight.
inline TowingWindow derive_towing_window(double arrival, double departure, const TurnaroundTemplate& tpl) {
  const int transit = static_cast<int>(std::lround(departure - arrival));
  const Stn stn = build_stn(transit, tpl);
  const StnMinimization m = minimize_stn(stn);
  if (!m.consistent) {
    throw InfeasibleError("turnaround template cannot fit a transit of " + std::to_string(transit) + " min");
  }
  return towing_window(stn, m, arrival, tpl.towing_activity);
}

/// Default template: guidance starts at arrival, towing follows, ground
/// services run after towing, boarding and loading close the turnaround.
/// Bands below 80 min transit are tighter than the ones above.
inline TurnaroundTemplate default_turnaround_template() {
  auto two_bands = [](int short_min, int short_max, int long_min, int long_max) {
    return std::vector<DurationBand>{{0, 80, short_min, short_max}, {80, std::nullopt, long_min, long_max}};
  };
  TurnaroundTemplate t;
  t.activities = {
      {"guidance", true, two_bands(5, 10, 5, 15)},
      {"towing", false, two_bands(5, 10, 5, 10)},
      {"baggage_unload", false, two_bands(8, 15, 10, 25)},
      {"cleaning", false, two_bands(8, 15, 10, 25)},
      {"catering", false, two_bands(8, 12, 10, 20)},
      {"refueling", false, two_bands(10, 15, 12, 25)},
      {"baggage_load", false, two_bands(8, 15, 10, 25)},
      {"boarding", false, two_bands(10, 15, 15, 25)},
  };
  t.precedence = {
      {"guidance", "towing"},         {"towing", "baggage_unload"}, {"towing", "cleaning"},
      {"towing", "catering"},         {"towing", "refueling"},      {"baggage_unload", "baggage_load"},
      {"cleaning", "boarding"},       {"catering", "boarding"},     {"refueling", "boarding"},
  };
  t.towing_activity = "towing";
  return t;
}

}  // namespace evtow
