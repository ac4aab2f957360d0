#pragma once

// Speed x charge-target grid, energy-model ablation and their text reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "evtow/errors.hpp"
#include "evtow/ga_solver.hpp"
#include "evtow/instance.hpp"
#include "evtow/parallel.hpp"
#include "evtow/route_eval.hpp"

namespace evtow {

inline const std::vector<double>& default_speeds() {
  static const std::vector<double> v{5, 10, 15, 20, 25};
  return v;
}

inline const std::vector<double>& default_gammas() {
  static const std::vector<double> g{0.8, 0.9, 1.0};
  return g;
}

struct SweepCell {
  double speed_kmh = 0.0;
  double gamma = 0.0;
  bool feasible = false;
  int tractors = 0;
  CostBreakdown cost;  // best run
  Solution best;
  std::uint64_t best_seed = 0;
  int feasible_runs = 0;
  double mean_total = 0.0;
  double stddev_total = 0.0;
  std::vector<double> run_totals;
  std::string error;
};

struct SweepReport {
  std::vector<double> speeds;  // ascending
  std::vector<double> gammas;  // ascending
  std::vector<SweepCell> cells;  // ordered by (gamma, speed)
  int argmin = -1;

  const SweepCell& at(double gamma, double speed) const {
    for (const auto& c : cells) {
      if (c.gamma == gamma && c.speed_kmh == speed) return c;
    }
    throw DomainError("sweep report has no such cell");
  }
};

namespace detail {

inline std::string fmt(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string fmt_param(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace detail

/// Runs the improved GA on every (gamma, speed) cell over the seed list. The
/// cell result is the best run; mean and spread are kept alongside.
inline SweepReport sweep(const Instance& inst, std::vector<double> speeds, std::vector<double> gammas,
                         const GAConfig& config, const std::vector<std::uint64_t>& seeds) {
  if (speeds.empty() || gammas.empty() || seeds.empty()) throw DomainError("sweep needs speeds, gammas and seeds");
  std::sort(speeds.begin(), speeds.end());
  std::sort(gammas.begin(), gammas.end());
  for (double g : gammas) {
    for (double v : speeds) Strategy{v, g}.validate();
  }
  SweepReport report;
  report.speeds = speeds;
  report.gammas = gammas;
  for (double g : gammas) {
    for (double v : speeds) {
      SweepCell c;
      c.speed_kmh = v;
      c.gamma = g;
      report.cells.push_back(c);
    }
  }
  const int threads = resolve_threads(config.threads);
  const int cells = static_cast<int>(report.cells.size());
  GAConfig inner = config;
  inner.threads = std::max(1, threads / std::max(1, cells));
  parallel_for(cells, std::min(threads, cells), [&](int i) {
    SweepCell& cell = report.cells[i];
    const Strategy strategy{cell.speed_kmh, cell.gamma};
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed : seeds) {
      GAConfig cfg = inner;
      cfg.seed = seed;
      try {
        GAResult r = run_ga(inst, strategy, cfg);
        cell.run_totals.push_back(r.cost.total);
        ++cell.feasible_runs;
        if (r.cost.total < best) {
          best = r.cost.total;
          cell.cost = r.cost;
          cell.best = prune_empty(r.best);
          cell.best_seed = seed;
          cell.tractors = static_cast<int>(cell.best.routes.size());
        }
      } catch (const InfeasibleError& e) {
        cell.error = e.what();
      }
    }
    cell.feasible = cell.feasible_runs > 0;
    if (cell.feasible) {
      double sum = 0.0;
      for (double t : cell.run_totals) sum += t;
      cell.mean_total = sum / cell.run_totals.size();
      double sq = 0.0;
      for (double t : cell.run_totals) sq += (t - cell.mean_total) * (t - cell.mean_total);
      cell.stddev_total = cell.run_totals.size() > 1 ? std::sqrt(sq / (cell.run_totals.size() - 1)) : 0.0;
    }
  });
  for (int i = 0; i < cells; ++i) {
    const auto& c = report.cells[i];
    if (!c.feasible) continue;
    if (report.argmin < 0 || c.cost.total < report.cells[report.argmin].cost.total) report.argmin = i;
  }
  return report;
}

/// True when, for some gamma, the fleet shrinks between two consecutive speeds.
inline bool has_turning_point(const SweepReport& r) {
  for (double g : r.gammas) {
    const SweepCell* prev = nullptr;
    for (double v : r.speeds) {
      const SweepCell& c = r.at(g, v);
      if (prev && prev->feasible && c.feasible && c.tractors < prev->tractors) return true;
      prev = &c;
    }
  }
  return false;
}

/// True when exactly one feasible cell attains the minimum total.
inline bool argmin_is_unique(const SweepReport& r) {
  if (r.argmin < 0) return false;
  const double best = r.cells[r.argmin].cost.total;
  int ties = 0;
  for (const auto& c : r.cells) {
    if (c.feasible && std::abs(c.cost.total - best) <= 1e-9) ++ties;
  }
  return ties == 1;
}

inline std::string grid_csv(const SweepReport& r) {
  std::ostringstream out;
  out << "gamma,speed_kmh,feasible,required_tractors,fixed_cost,variable_cost,charging_cost,time_cost,total_cost,"
         "mean_total,stddev_total,feasible_runs,best_seed,argmin\n";
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    const auto& c = r.cells[i];
    out << detail::fmt_param(c.gamma) << ',' << detail::fmt_param(c.speed_kmh) << ',' << (c.feasible ? 1 : 0) << ',';
    if (c.feasible) {
      out << c.tractors << ',' << detail::fmt(c.cost.fixed) << ',' << detail::fmt(c.cost.maintenance) << ','
          << detail::fmt(c.cost.charging) << ',' << detail::fmt(c.cost.time_penalty) << ','
          << detail::fmt(c.cost.total) << ',' << detail::fmt(c.mean_total) << ',' << detail::fmt(c.stddev_total) << ','
          << c.feasible_runs << ',' << c.best_seed;
    } else {
      out << ",,,,,,,,0,";
    }
    out << ',' << (static_cast<int>(i) == r.argmin ? 1 : 0) << '\n';
  }
  return out.str();
}

/// One series per gamma: total cost against speed.
inline std::map<double, std::string> emit_cost_curves(const SweepReport& r) {
  std::map<double, std::string> out;
  for (double g : r.gammas) {
    std::ostringstream s;
    s << "speed_kmh,total_cost,required_tractors,argmin\n";
    for (double v : r.speeds) {
      const SweepCell& c = r.at(g, v);
      const bool is_min = r.argmin >= 0 && &r.cells[r.argmin] == &c;
      s << detail::fmt_param(v) << ',' << (c.feasible ? detail::fmt(c.cost.total) : std::string()) << ','
        << (c.feasible ? std::to_string(c.tractors) : std::string()) << ',' << (is_min ? 1 : 0) << '\n';
    }
    out[g] = s.str();
  }
  return out;
}

inline std::string summary_text(const SweepReport& r) {
  std::ostringstream s;
  s << "cells: " << r.cells.size() << " (" << r.gammas.size() << " charge targets x " << r.speeds.size()
    << " speeds)\n";
  int infeasible = 0;
  for (const auto& c : r.cells) infeasible += c.feasible ? 0 : 1;
  s << "infeasible cells: " << infeasible << '\n';
  if (r.argmin < 0) {
    s << "optimal strategy: none (no feasible cell)\n";
    return s.str();
  }
  const auto& c = r.cells[r.argmin];
  s << "optimal strategy: gamma=" << detail::fmt_param(c.gamma) << " speed=" << detail::fmt_param(c.speed_kmh)
    << " km/h, " << c.tractors << " tractors, total cost " << detail::fmt(c.cost.total) << '\n';
  s << "fleet turning point: " << (has_turning_point(r) ? "yes" : "no") << '\n';
  return s.str();
}

struct AblationRow {
  EnergyModelKind model = EnergyModelKind::start_stop;
  std::uint64_t seed = 0;
  CostBreakdown cost;
  int tractors = 0;
};

struct AblationReport {
  std::vector<AblationRow> rows;  // traditional then start-stop for each seed

  double mean_total(EnergyModelKind m) const { return mean(m, [](const AblationRow& r) { return r.cost.total; }); }
  double mean_tractors(EnergyModelKind m) const {
    return mean(m, [](const AblationRow& r) { return static_cast<double>(r.tractors); });
  }

 private:
  template <class F>
  double mean(EnergyModelKind m, F f) const {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rows) {
      if (r.model == m) {
        sum += f(r);
        ++n;
      }
    }
    return n ? sum / n : 0.0;
  }
};

/// Solves the instance once per seed under each energy model; each run is
/// costed under the model it optimised.
inline AblationReport energy_model_ablation(const Instance& inst, const Strategy& strategy, const GAConfig& config,
                                            const std::vector<std::uint64_t>& seeds) {
  AblationReport report;
  report.rows.resize(2 * seeds.size());
  const int runs = static_cast<int>(report.rows.size());
  const int threads = resolve_threads(config.threads);
  parallel_for(runs, std::min(threads, runs), [&](int i) {
    GAConfig cfg = config;
    cfg.threads = 1;
    cfg.seed = seeds[i / 2];
    cfg.eval.energy = i % 2 == 0 ? EnergyModelKind::traditional : EnergyModelKind::start_stop;
    const GAResult r = run_ga(inst, strategy, cfg);
    AblationRow& row = report.rows[i];
    row.model = cfg.eval.energy;
    row.seed = cfg.seed;
    row.cost = r.cost;
    row.tractors = static_cast<int>(prune_empty(r.best).routes.size());
  });
  return report;
}

inline std::string ablation_csv(const AblationReport& r) {
  std::ostringstream out;
  out << "model,seed,required_tractors,fixed_cost,variable_cost,charging_cost,time_cost,total_cost\n";
  for (const auto& row : r.rows) {
    out << to_string(row.model) << ',' << row.seed << ',' << row.tractors << ',' << detail::fmt(row.cost.fixed) << ','
        << detail::fmt(row.cost.maintenance) << ',' << detail::fmt(row.cost.charging) << ','
        << detail::fmt(row.cost.time_penalty) << ',' << detail::fmt(row.cost.total) << '\n';
  }
  return out.str();
}

}  // namespace evtow
