#pragma once

// Exact solver for tiny instances. Route costs do not interact, so the best
// route for every subset of stands is found by trying every visiting order
// and every charger insertion, then every partition of the stands into at
// most max_tractors subsets is priced from those per-subset optima.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "evtow/errors.hpp"
#include "evtow/instance.hpp"
#include "evtow/route_eval.hpp"

namespace evtow {

struct OracleLimits {
  int max_flights = 6;
  int max_tractors = 3;
  int max_charger_visits_per_route = 1;
};

struct OracleResult {
  bool feasible = false;
  Solution best;
  CostBreakdown cost;
  long long routes_evaluated = 0;
};

namespace detail {

struct BestRoute {
  bool feasible = false;
  Route route;
  RouteScore score;
};

// (cost, tractors, lexicographic routes) total order with a small cost tolerance.
inline bool better_solution(double cost_a, const std::vector<Route>& a, double cost_b, const std::vector<Route>& b) {
  if (std::abs(cost_a - cost_b) > 1e-9) return cost_a < cost_b;
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// Walks the gaps before each stand and before the depot return; each gap may
// take one charger visit while the per-route cap allows.
inline void charger_insertions(const Evaluator& ev, const std::vector<int>& stands, const std::vector<int>& chargers,
                               int cap, std::size_t gap, Route& route, int used, BestRoute& best,
                               long long& counter) {
  if (gap > stands.size()) {
    route.push_back(0);
    ++counter;
    const RouteScore sc = ev.score(route);
    const bool ok = sc.soc_ok && (ev.settings().windows == WindowMode::soft || sc.windows_ok);
    if (ok) {
      const double cost = sc.cost.total;
      bool take = !best.feasible;
      if (!take) {
        take = std::abs(cost - best.score.cost.total) > 1e-9 ? cost < best.score.cost.total : route < best.route;
      }
      if (take) {
        best.feasible = true;
        best.route = route;
        best.score = sc;
      }
    }
    route.pop_back();
    return;
  }
  auto next = [&](int charges) {
    if (gap < stands.size()) route.push_back(stands[gap]);
    charger_insertions(ev, stands, chargers, cap, gap + 1, route, charges, best, counter);
    if (gap < stands.size()) route.pop_back();
  };
  next(used);
  if (used < cap) {
    for (int h : chargers) {
      route.push_back(h);
      next(used + 1);
      route.pop_back();
    }
  }
}

}  // namespace detail

inline OracleResult exact_solve(const Instance& inst, const Strategy& strategy, const OracleLimits& limits = {},
                                EvalSettings settings = {}) {
  require_valid(inst);
  const std::vector<int> stands = inst.stand_ids();
  const int n = static_cast<int>(stands.size());
  if (n > limits.max_flights) {
    throw DomainError("oracle refuses " + std::to_string(n) + " flights; the limit is " + std::to_string(limits.max_flights));
  }
  if (n == 0) throw DomainError("oracle: instance has no flights");
  const int max_routes = std::min(limits.max_tractors, inst.fleet_limit.value_or(limits.max_tractors));
  const Evaluator ev(inst, strategy, settings);
  const std::vector<int> chargers = inst.charger_ids();

  OracleResult result;
  std::vector<detail::BestRoute> best(1u << n);
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) subset.push_back(stands[i]);
    }
    do {
      Route route{0};
      detail::charger_insertions(ev, subset, chargers, limits.max_charger_visits_per_route, 0, route, 0, best[mask],
                                 result.routes_evaluated);
    } while (std::next_permutation(subset.begin(), subset.end()));
  }

  // Set partitions as restricted growth strings over the stands.
  std::vector<int> block(n, 0);
  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<Route> best_routes;
  auto consider = [&](int blocks) {
    std::vector<unsigned> masks(blocks, 0u);
    for (int i = 0; i < n; ++i) masks[block[i]] |= 1u << i;
    double cost = 0.0;
    std::vector<Route> routes;
    for (unsigned m : masks) {
      if (!best[m].feasible) return;
      cost += best[m].score.cost.total;
      routes.push_back(best[m].route);
    }
    std::sort(routes.begin(), routes.end());
    if (best_routes.empty() || detail::better_solution(cost, routes, best_cost, best_routes)) {
      best_cost = cost;
      best_routes = std::move(routes);
    }
  };
  auto recurse = [&](auto&& self, int i, int blocks) -> void {
    if (i == n) {
      consider(blocks);
      return;
    }
    for (int b = 0; b <= blocks && b < max_routes; ++b) {
      block[i] = b;
      self(self, i + 1, std::max(blocks, b + 1));
    }
  };
  recurse(recurse, 0, 0);

  if (best_routes.empty()) return result;
  result.feasible = true;
  result.best.routes = best_routes;
  result.cost = ev.evaluate(result.best).cost;
  return result;
}

}  // namespace evtow
