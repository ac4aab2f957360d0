#pragma once

// Comparison harnesses shared by the command-line tool and the acceptance
// checks: GA against the exact solver on tiny instances, and the improved GA
// against the traditional one.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "evtow/ga_solver.hpp"
#include "evtow/generator.hpp"
#include "evtow/oracle.hpp"
#include "evtow/parallel.hpp"
#include "evtow/strategy_sweep.hpp"

namespace evtow {

/// Tiny instance for oracle checks: compact layout, one charger, at most two tractors.
inline Instance tiny_instance(std::uint64_t seed, int flights) {
  GeneratorOptions opt;
  opt.fleet_limit = 2;
  return generate_instance(seed, Layout::compact, flights, opt);
}

struct OracleCheckRow {
  std::uint64_t seed = 0;
  int flights = 0;
  bool oracle_feasible = false;
  double oracle_cost = 0.0;
  int oracle_tractors = 0;
  bool ga_feasible = false;
  double ga_cost = 0.0;
  int ga_tractors = 0;
  std::string status;  // match | worse | beats_oracle | infeasible
};

inline bool same_cost(double a, double b) { return std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(b)); }

inline OracleCheckRow oracle_check_one(const Instance& inst, std::uint64_t seed, const Strategy& strategy,
                                       GAConfig cfg) {
  OracleCheckRow row;
  row.seed = seed;
  row.flights = static_cast<int>(inst.flights.size());
  const OracleResult o = exact_solve(inst, strategy, {}, cfg.eval);
  row.oracle_feasible = o.feasible;
  row.oracle_cost = o.cost.total;
  row.oracle_tractors = static_cast<int>(o.best.routes.size());
  cfg.seed = seed;
  try {
    const GAResult g = run_ga(inst, strategy, cfg);
    row.ga_feasible = true;
    row.ga_cost = g.cost.total;
    row.ga_tractors = static_cast<int>(prune_empty(g.best).routes.size());
  } catch (const InfeasibleError&) {
    row.ga_feasible = false;
  }
  if (!row.oracle_feasible) {
    row.status = row.ga_feasible ? "beats_oracle" : "infeasible";
  } else if (!row.ga_feasible) {
    row.status = "worse";
  } else if (same_cost(row.ga_cost, row.oracle_cost)) {
    row.status = "match";
  } else {
    row.status = row.ga_cost < row.oracle_cost ? "beats_oracle" : "worse";
  }
  return row;
}

/// Instance i uses seed first_seed + i and 3, 4 or 5 flights in turn.
inline std::vector<OracleCheckRow> oracle_check(int count, std::uint64_t first_seed, const Strategy& strategy,
                                                const GAConfig& cfg) {
  std::vector<OracleCheckRow> rows(count);
  GAConfig inner = cfg;
  inner.threads = 1;
  parallel_for(count, resolve_threads(cfg.threads), [&](int i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    const int flights = 3 + i % 3;
    rows[i] = oracle_check_one(tiny_instance(seed, flights), seed, strategy, inner);
  });
  return rows;
}

inline std::string oracle_check_csv(const std::vector<OracleCheckRow>& rows) {
  std::ostringstream out;
  out << "seed,flights,oracle_cost,oracle_tractors,ga_cost,ga_tractors,status\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << r.flights << ',' << (r.oracle_feasible ? detail::fmt(r.oracle_cost, 6) : "") << ','
        << (r.oracle_feasible ? std::to_string(r.oracle_tractors) : "") << ','
        << (r.ga_feasible ? detail::fmt(r.ga_cost, 6) : "") << ','
        << (r.ga_feasible ? std::to_string(r.ga_tractors) : "") << ',' << r.status << '\n';
  }
  return out.str();
}

struct CompareRun {
  bool baseline = false;
  std::uint64_t seed = 0;
  CostBreakdown cost;
  int tractors = 0;
  int iterations_to_1pct = 0;
  double seconds = 0.0;
  std::vector<double> best_so_far;
};

/// Improved and traditional GA on every seed; rows alternate improved, traditional.
inline std::vector<CompareRun> compare_ga(const Instance& inst, const Strategy& strategy, const GAConfig& cfg,
                                          const std::vector<std::uint64_t>& seeds) {
  std::vector<CompareRun> runs(2 * seeds.size());
  parallel_for(static_cast<int>(runs.size()), resolve_threads(cfg.threads), [&](int i) {
    GAConfig c = cfg;
    c.threads = 1;
    c.seed = seeds[i / 2];
    const bool baseline = i % 2 == 1;
    const GAResult r = baseline ? run_traditional_ga(inst, strategy, c) : run_ga(inst, strategy, c);
    CompareRun& run = runs[i];
    run.baseline = baseline;
    run.seed = c.seed;
    run.cost = r.cost;
    run.tractors = static_cast<int>(prune_empty(r.best).routes.size());
    run.iterations_to_1pct = r.stats.iterations_to_within(0.01);
    run.seconds = r.stats.seconds;
    run.best_so_far = r.stats.best_so_far;
  });
  return runs;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

/// Objective per run plus averages; timings are kept out so the file is reproducible.
inline std::string compare_ga_csv(const std::vector<CompareRun>& runs) {
  std::ostringstream out;
  out << "algorithm,seed,objective,required_tractors,iterations_to_1pct\n";
  for (int pass = 0; pass < 2; ++pass) {
    const bool baseline = pass == 1;
    double sum = 0.0;
    int n = 0;
    for (const auto& r : runs) {
      if (r.baseline != baseline) continue;
      out << (baseline ? "traditional" : "improved") << ',' << r.seed << ',' << detail::fmt(r.cost.total) << ','
          << r.tractors << ',' << r.iterations_to_1pct << '\n';
      sum += r.cost.total;
      ++n;
    }
    if (n) out << (baseline ? "traditional" : "improved") << ",average," << detail::fmt(sum / n) << ",,\n";
  }
  return out.str();
}

inline std::string compare_ga_timing_csv(const std::vector<CompareRun>& runs) {
  std::ostringstream out;
  out << "algorithm,seed,seconds\n";
  for (const auto& r : runs) {
    out << (r.baseline ? "traditional" : "improved") << ',' << r.seed << ',' << detail::fmt(r.seconds, 3) << '\n';
  }
  return out.str();
}

}  // namespace evtow
