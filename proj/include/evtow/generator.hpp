#pragma once

// Seeded synthetic airports. Layouts are statistical look-alikes of a large
// dispersed terminal (scenario 1) and a dense one (scenario 2): a row of
// close stands along the terminal, clusters of remote stands, a depot and a
// few chargers. Positions are rescaled so the largest node-to-node distance
// equals the layout's network extent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "evtow/errors.hpp"
#include "evtow/instance.hpp"
#include "evtow/rng.hpp"
#include "evtow/temporal_windows.hpp"

namespace evtow {

enum class Layout { scenario1, scenario2, compact };

inline const char* to_string(Layout l) {
  switch (l) {
    case Layout::scenario1: return "s1";
    case Layout::scenario2: return "s2";
    case Layout::compact: return "compact";
  }
  return "s1";
}

inline Layout layout_from_string(const std::string& s) {
  if (s == "s1" || s == "scenario1") return Layout::scenario1;
  if (s == "s2" || s == "scenario2") return Layout::scenario2;
  if (s == "compact") return Layout::compact;
  throw ParseError("unknown layout '" + s + "' (expected s1, s2 or compact)");
}

struct LayoutShape {
  int close_stands = 0;
  int remote_stands = 0;
  int chargers = 0;
  double extent_m = 0.0;
};

inline LayoutShape layout_shape(Layout l) {
  switch (l) {
    case Layout::scenario1: return {18, 24, 3, 4210.0};
    case Layout::scenario2: return {31, 8, 2, 3480.0};
    case Layout::compact: return {6, 0, 1, 1200.0};
  }
  return {};
}

struct GeneratorOptions {
  double medium_share = 0.70;
  double heavy_share = 0.25;  // super-heavy takes the rest
  double day_start = 480.0;   // first arrivals, min from midnight
  /// Arrival spread in minutes; zero picks 6 min per flight (at least 60).
  double arrival_span = 0.0;
  double peak_share = 0.6;
  int peak_transit_min = 45;
  int peak_transit_max = 75;
  int offpeak_transit_min = 80;
  int offpeak_transit_max = 150;
  double stand_buffer = 10.0;  // min between a departure and the next arrival at a stand
  double min_spacing = 65.0;   // m between distinct positions
  std::optional<int> fleet_limit;
  TurnaroundTemplate turnaround = default_turnaround_template();
};

namespace detail {

struct Point {
  double x;
  double y;
};

inline void place_row(std::vector<Point>& out, int count, Point origin, double pitch, Rng& rng) {
  for (int i = 0; i < count; ++i) {
    out.push_back({origin.x + pitch * i + rng.uniform(-8.0, 8.0), origin.y + rng.uniform(-8.0, 8.0)});
  }
}

inline void place_cluster(std::vector<Point>& out, int count, Point centre, double pitch, Rng& rng) {
  const int cols = std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))));
  for (int i = 0; i < count; ++i) {
    const int r = i / cols;
    const int c = i % cols;
    out.push_back({centre.x + pitch * c + rng.uniform(-10.0, 10.0), centre.y + pitch * r + rng.uniform(-10.0, 10.0)});
  }
}

inline double min_pairwise(const std::vector<Point>& pts) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::min(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    }
  }
  return best;
}

inline double max_pairwise(const std::vector<Point>& pts) {
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      best = std::max(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
    }
  }
  return best;
}

// Depot first, then physical stands (close, remote), then chargers.
inline std::vector<Point> layout_points(Layout layout, const LayoutShape& shape, Rng& rng) {
  std::vector<Point> pts;
  switch (layout) {
    case Layout::scenario1:
      pts.push_back({-200.0, -300.0});
      place_row(pts, shape.close_stands, {200.0, 0.0}, 85.0, rng);
      place_cluster(pts, 8, {700.0, 1700.0}, 95.0, rng);
      place_cluster(pts, 8, {2500.0, 1100.0}, 95.0, rng);
      place_cluster(pts, shape.remote_stands - 16, {3000.0, -700.0}, 95.0, rng);
      pts.push_back({500.0, -250.0});
      pts.push_back({1900.0, 700.0});
      pts.push_back({2800.0, 200.0});
      break;
    case Layout::scenario2: {
      pts.push_back({-150.0, -250.0});
      const int row1 = (shape.close_stands + 1) / 2;
      place_row(pts, row1, {100.0, 0.0}, 85.0, rng);
      place_row(pts, shape.close_stands - row1, {140.0, 260.0}, 85.0, rng);
      place_cluster(pts, shape.remote_stands, {2000.0, 900.0}, 95.0, rng);
      pts.push_back({700.0, -200.0});
      pts.push_back({1700.0, 500.0});
      break;
    }
    case Layout::compact: {
      const int total = 1 + shape.close_stands + shape.chargers;
      while (static_cast<int>(pts.size()) < total) {
        Point p{rng.uniform(0.0, 850.0), rng.uniform(0.0, 850.0)};
        bool ok = true;
        for (const auto& q : pts) ok = ok && std::hypot(p.x - q.x, p.y - q.y) >= 150.0;
        if (ok) pts.push_back(p);
      }
      break;
    }
  }
  return pts;
}

}  // namespace detail

/// Deterministic for a given (seed, layout, n_flights, options).
inline Instance generate_instance(std::uint64_t seed, Layout layout, int n_flights,
                                  const GeneratorOptions& opt = {}) {
  if (n_flights < 1) throw DomainError("generate_instance: need at least one flight");
  const LayoutShape shape = layout_shape(layout);
  const int physical = shape.close_stands + shape.remote_stands;
  Rng rng(seed);

  std::vector<detail::Point> pts;
  for (int attempt = 0;; ++attempt) {
    pts = detail::layout_points(layout, shape, rng);
    const double scale = shape.extent_m / detail::max_pairwise(pts);
    for (auto& p : pts) p = {p.x * scale, p.y * scale};
    if (detail::min_pairwise(pts) >= opt.min_spacing) break;
    if (attempt > 100) throw DomainError("generate_instance: cannot honour the minimum node spacing");
  }

  // Flight schedule: peak arrivals cluster in two bands and turn around quickly.
  struct Draft {
    double arrival;
    double departure;
    AircraftClass cls;
  };
  const double span = opt.arrival_span > 0.0 ? opt.arrival_span : std::max(60.0, 6.0 * n_flights);
  std::vector<Draft> drafts;
  for (int i = 0; i < n_flights; ++i) {
    const bool peak = rng.uniform() < opt.peak_share;
    double offset;
    if (peak) {
      const bool morning = rng.uniform() < 0.5;
      offset = morning ? rng.uniform(0.0, 0.25 * span) : rng.uniform(0.6 * span, 0.85 * span);
    } else {
      offset = rng.uniform(0.0, span);
    }
    const double arrival = std::round(opt.day_start + offset);
    const int transit = peak ? rng.integer(opt.peak_transit_min, opt.peak_transit_max)
                             : rng.integer(opt.offpeak_transit_min, opt.offpeak_transit_max);
    const double u = rng.uniform();
    const AircraftClass cls = u < opt.medium_share                      ? AircraftClass::medium
                              : u < opt.medium_share + opt.heavy_share ? AircraftClass::heavy
                                                                        : AircraftClass::super_heavy;
    drafts.push_back({arrival, arrival + transit, cls});
  }
  std::stable_sort(drafts.begin(), drafts.end(),
                   [](const Draft& a, const Draft& b) { return a.arrival < b.arrival; });

  // A physical stand takes a new aircraft only after the previous one has left.
  std::vector<double> free_at(physical, -std::numeric_limits<double>::infinity());
  std::vector<int> stand_of(n_flights, -1);
  for (int f = 0; f < n_flights; ++f) {
    std::vector<int> free;
    for (int s = 0; s < physical; ++s) {
      if (free_at[s] + opt.stand_buffer <= drafts[f].arrival) free.push_back(s);
    }
    if (free.empty()) {
      throw DomainError("generate_instance: " + std::to_string(n_flights) + " flights exceed the stand capacity of the layout");
    }
    const int s = free[rng.integer(0, static_cast<int>(free.size()) - 1)];
    stand_of[f] = s;
    free_at[s] = drafts[f].departure;
  }

  Instance inst;
  inst.name = std::string(to_string(layout)) + "-seed" + std::to_string(seed) + "-n" + std::to_string(n_flights);
  inst.fleet_limit = opt.fleet_limit;
  inst.nodes.push_back({0, NodeKind::depot, true, pts[0].x, pts[0].y, std::nullopt});
  for (int f = 0; f < n_flights; ++f) {
    const auto& p = pts[1 + stand_of[f]];
    inst.nodes.push_back({f + 1, NodeKind::stand, true, p.x, p.y, stand_of[f]});
  }
  for (int c = 0; c < shape.chargers; ++c) {
    const auto& p = pts[1 + physical + c];
    inst.nodes.push_back({n_flights + 1 + c, NodeKind::charger, true, p.x, p.y, std::nullopt});
  }
  inst.distance = euclidean_distances(inst.nodes);

  for (int f = 0; f < n_flights; ++f) {
    Flight fl;
    char id[16];
    std::snprintf(id, sizeof id, "F%03d", f + 1);
    fl.id = id;
    fl.stand = f + 1;
    fl.profile = AircraftServiceProfile::defaults(drafts[f].cls);
    fl.arrival = drafts[f].arrival;
    fl.departure = drafts[f].departure;
    const TowingWindow w = derive_towing_window(fl.arrival, fl.departure, opt.turnaround);
    fl.earliest = w.earliest;
    fl.latest = w.latest;
    inst.flights.push_back(std::move(fl));
  }
  return inst;
}

/// Mean distance over all pairs of distinct physical stands.
inline double mean_stand_distance(const Instance& inst) {
  std::vector<const Node*> seen;
  for (const auto& n : inst.nodes) {
    if (n.kind != NodeKind::stand) continue;
    bool dup = false;
    for (const Node* s : seen) dup = dup || (s->physical_stand && n.physical_stand && *s->physical_stand == *n.physical_stand);
    if (!dup) seen.push_back(&n);
  }
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      sum += inst.distance[seen[i]->id][seen[j]->id];
      ++pairs;
    }
  }
  return pairs ? sum / pairs : 0.0;
}

}  // namespace evtow
