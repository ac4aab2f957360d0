#pragma once

// Genetic algorithm for tractor routing.
//
// A chromosome lists stand and charger ids with depot (0) separators between
// routes, e.g. [0, 2, 4, 0, 1, 3, 6, 5, 0]. Crossover works on the order of
// stands only; the child keeps one parent's route boundaries and charger
// positions. A repair pass then strips chargers, re-inserts them where the
// battery would otherwise drop below the floor, and opens an extra route
// when a stand could only be reached hopelessly late.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "evtow/errors.hpp"
#include "evtow/instance.hpp"
#include "evtow/parallel.hpp"
#include "evtow/rng.hpp"
#include "evtow/route_eval.hpp"

namespace evtow {

using Chromosome = std::vector<int>;

inline Chromosome encode(const Solution& s) {
  Chromosome c{0};
  for (const auto& r : s.routes) {
    for (std::size_t i = 1; i + 1 < r.size(); ++i) c.push_back(r[i]);
    c.push_back(0);
  }
  if (c.size() == 1) c.push_back(0);
  return c;
}

/// Splits on depot separators and drops empty routes. Ids must be known nodes.
inline Solution decode(const Chromosome& c, int node_count) {
  if (c.size() < 2 || c.front() != 0 || c.back() != 0) {
    throw StructuralError("decode: chromosome must begin and end with the depot");
  }
  Solution s;
  Route cur{0};
  for (std::size_t i = 1; i < c.size(); ++i) {
    const int g = c[i];
    if (g < 0 || g >= node_count) throw StructuralError("decode: unknown node id " + std::to_string(g));
    if (g == 0) {
      if (cur.size() > 1) {
        cur.push_back(0);
        s.routes.push_back(std::move(cur));
      }
      cur = Route{0};
    } else {
      cur.push_back(g);
    }
  }
  return s;
}

inline Solution decode(const Chromosome& c, const Instance& inst) { return decode(c, inst.node_count()); }

struct ProbabilityRange {
  double lo = 0.0;
  double hi = 0.0;
};

enum class PmOrientation { paper, srinivas };

/// Crossover probability for a pair whose fitter parent has fitness f.
inline double adaptive_pc(double f, double f_max, double f_avg, ProbabilityRange r) {
  if (f < f_avg || !(f_max > f_avg)) return r.hi;
  const double p = r.hi - (r.hi - r.lo) * (f - f_avg) / (f_max - f_avg);
  return std::clamp(p, r.lo, r.hi);
}

/// Mutation probability. The paper orientation gives the fittest individuals
/// the largest rate; the Srinivas orientation gives them the smallest.
inline double adaptive_pm(double f, double f_max, double f_avg, ProbabilityRange r,
                          PmOrientation orientation = PmOrientation::paper) {
  if (f < f_avg || !(f_max > f_avg)) return r.hi;
  const double share = orientation == PmOrientation::paper ? (f_max - f) / (f_max - f_avg)
                                                           : (f - f_avg) / (f_max - f_avg);
  return std::clamp(r.hi - (r.hi - r.lo) * share, r.lo, r.hi);
}

/// Partially mapped crossover with the segment [first, last] (0-based,
/// inclusive). The first child is `a` carrying b's segment, the second is `b`
/// carrying a's segment.
inline std::pair<std::vector<int>, std::vector<int>> pmx_crossover_at(const std::vector<int>& a,
                                                                      const std::vector<int>& b,
                                                                      std::size_t first, std::size_t last) {
  if (a.size() != b.size()) throw StructuralError("pmx: parents differ in length");
  {
    std::vector<int> sa = a;
    std::vector<int> sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) throw StructuralError("pmx: parents carry different genes");
    if (std::adjacent_find(sa.begin(), sa.end()) != sa.end()) throw StructuralError("pmx: parents must be permutations");
  }
  if (a.empty()) return {a, b};
  if (first > last || last >= a.size()) throw DomainError("pmx: bad segment");

  auto make_child = [&](const std::vector<int>& base, const std::vector<int>& donor) {
    std::vector<int> child = base;
    // donor gene at position i inside the segment replaces base gene at i
    std::vector<std::pair<int, int>> mapping;
    for (std::size_t i = first; i <= last; ++i) {
      child[i] = donor[i];
      mapping.emplace_back(donor[i], base[i]);
    }
    auto in_segment = [&](int g) -> const std::pair<int, int>* {
      for (const auto& m : mapping) {
        if (m.first == g) return &m;
      }
      return nullptr;
    };
    for (std::size_t i = 0; i < child.size(); ++i) {
      if (i >= first && i <= last) continue;
      int g = base[i];
      while (const auto* m = in_segment(g)) g = m->second;
      child[i] = g;
    }
    return child;
  };
  return {make_child(a, b), make_child(b, a)};
}

inline std::pair<std::vector<int>, std::vector<int>> pmx_crossover(const std::vector<int>& a,
                                                                   const std::vector<int>& b, Rng& rng) {
  if (a.size() < 2) return pmx_crossover_at(a, b, 0, a.empty() ? 0 : a.size() - 1);
  std::size_t i = static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.size()) - 1));
  std::size_t j = static_cast<std::size_t>(rng.integer(0, static_cast<int>(a.size()) - 1));
  if (i > j) std::swap(i, j);
  return pmx_crossover_at(a, b, i, j);
}

/// Reverses genes first..last inclusive.
inline Chromosome reverse_segment(Chromosome c, std::size_t first, std::size_t last) {
  if (first > last || last >= c.size()) throw DomainError("reverse_segment: bad cut points");
  std::reverse(c.begin() + static_cast<std::ptrdiff_t>(first), c.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  return c;
}

/// Reversal between two random interior cut points; the end separators stay.
inline Chromosome reversal_mutation(const Chromosome& c, Rng& rng) {
  if (c.size() < 4) return c;
  const int hi = static_cast<int>(c.size()) - 2;
  int i = rng.integer(1, hi);
  int j = rng.integer(1, hi);
  if (i > j) std::swap(i, j);
  return reverse_segment(c, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

/// Swaps two random interior genes; separators may move, stands may change route.
inline Chromosome swap_mutation(Chromosome c, Rng& rng) {
  if (c.size() < 4) return c;
  const int hi = static_cast<int>(c.size()) - 2;
  std::swap(c[static_cast<std::size_t>(rng.integer(1, hi))], c[static_cast<std::size_t>(rng.integer(1, hi))]);
  return c;
}

/// Index drawn with probability weight[i] / sum(weight).
inline int roulette_select(const std::vector<double>& cumulative, Rng& rng) {
  const double total = cumulative.back();
  const double x = rng.uniform() * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
  return static_cast<int>(std::min<std::ptrdiff_t>(it - cumulative.begin(), static_cast<std::ptrdiff_t>(cumulative.size()) - 1));
}

inline std::vector<double> cumulative_weights(const std::vector<double>& weights) {
  std::vector<double> c(weights.size());
  std::partial_sum(weights.begin(), weights.end(), c.begin());
  return c;
}

enum class RepairPolicy { repair, reject };

struct GAConfig {
  int population_size = 200;
  int max_iterations = 1000;
  double generation_gap = 0.9;
  ProbabilityRange pc{0.6, 0.8};
  ProbabilityRange pm{0.009, 0.2};
  std::uint64_t seed = 1;
  RepairPolicy repair = RepairPolicy::repair;
  /// Run the traditional GA instead of the improved one.
  bool baseline = false;
  PmOrientation pm_orientation = PmOrientation::paper;
  /// Delay (min) the greedy start still accepts before opening a new tractor.
  double acceptable_delay = 0.0;
  /// Delay (min) beyond which repair opens a new route; defaults to c1 / c_tau.
  std::optional<double> hopeless_delay;
  EvalSettings eval;
  int threads = 0;
};

struct GAStats {
  std::vector<double> best;  // index 0 is the initial population
  std::vector<double> mean;
  std::vector<double> best_so_far;
  double seconds = 0.0;
  long long evaluations = 0;

  /// First iteration whose best-so-far is within `fraction` of the final value.
  int iterations_to_within(double fraction) const {
    if (best_so_far.empty()) return 0;
    const double target = best_so_far.back() * (1.0 + fraction);
    for (std::size_t i = 0; i < best_so_far.size(); ++i) {
      if (best_so_far[i] <= target) return static_cast<int>(i);
    }
    return static_cast<int>(best_so_far.size()) - 1;
  }
};

struct GAResult {
  Solution best;
  CostBreakdown cost;
  GAStats stats;
};

/// Route construction shared by the greedy start and repair.
class RouteBuilder {
 public:
  RouteBuilder(const Evaluator& ev, double hopeless_delay)
      : ev_(&ev), hopeless_(hopeless_delay), chargers_(ev.instance().charger_ids()) {
    const int n = ev.node_count();
    nearest_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      for (int h : chargers_) {
        if (h != i && ev.distance(i, h) < best) {
          best = ev.distance(i, h);
          nearest_[i] = h;
        }
      }
    }
  }

  int nearest_charger(int node) const { return nearest_[node]; }

  struct State {
    Route route{0};
    double clock = 0.0;
    double soc = 0.0;
    int stands = 0;
    int pos() const { return route.back(); }
  };

  State fresh() const {
    State s;
    s.soc = ev_->capacity();
    return s;
  }

  double arrival_at(const State& s, int j) const { return s.clock + ev_->leg_time(s.pos(), j); }

  /// True when serving j next would leave too little charge to reach a charger
  /// afterwards (or the depot, when j is the last stop).
  bool needs_charge_before(const State& s, int j, bool last) const {
    const int from = s.pos();
    const double floor = ev_->soc_floor();
    if (s.soc - ev_->leg_draw(from, j) < floor) return true;
    double after = s.soc - ev_->leg_energy(from, j) - ev_->service_kwh(j);
    const int h = nearest_[j];
    const double onward = last || h < 0 ? std::max(ev_->leg_draw(j, 0), ev_->leg_energy(j, 0))
                                        : std::max(ev_->leg_draw(j, h), ev_->leg_energy(j, h));
    return after - onward < floor;
  }

  /// Visits the charger nearest to the current position when that adds charge.
  bool charge(State& s) const {
    const int from = s.pos();
    if (ev_->kind(from) == NodeKind::charger) return false;
    const int h = nearest_[from];
    if (h < 0) return false;
    const double soc_arr = s.soc - ev_->leg_energy(from, h);
    if (soc_arr >= ev_->charge_target()) return false;
    s.clock += ev_->leg_time(from, h) + ev_->charge_duration(soc_arr);
    s.soc = ev_->charge_target();
    s.route.push_back(h);
    return true;
  }

  void serve(State& s, int j) const {
    const int from = s.pos();
    const double arrival = s.clock + ev_->leg_time(from, j);
    s.clock = std::max(arrival, ev_->earliest(j)) + ev_->service_minutes(j);
    s.soc -= ev_->leg_energy(from, j) + ev_->service_kwh(j);
    s.route.push_back(j);
    ++s.stands;
  }

  Route close(State& s) const {
    const int from = s.pos();
    const double floor = ev_->soc_floor();
    if (s.soc - ev_->leg_energy(from, 0) < floor || s.soc - ev_->leg_draw(from, 0) < floor) charge(s);
    s.route.push_back(0);
    return std::move(s.route);
  }

  /// Rebuilds one route's stand order, inserting chargers and splitting off
  /// new routes while `spare_routes` allows.
  void rebuild(const std::vector<int>& stands, int& spare_routes, std::vector<Route>& out) const {
    State s = fresh();
    for (std::size_t k = 0; k < stands.size(); ++k) {
      const int j = stands[k];
      const bool last = k + 1 == stands.size();
      if (s.stands > 0 && spare_routes > 0) {
        const double arrival = arrival_at(s, j);
        const double fresh_arrival = ev_->leg_time(0, j);
        if (arrival - ev_->latest(j) > hopeless_ && fresh_arrival < arrival) {
          out.push_back(close(s));
          s = fresh();
          --spare_routes;
        }
      }
      if (needs_charge_before(s, j, last)) charge(s);
      serve(s, j);
    }
    if (s.stands > 0) out.push_back(close(s));
  }

 private:
  const Evaluator* ev_;
  double hopeless_;
  std::vector<int> chargers_;
  std::vector<int> nearest_;
};

inline double default_hopeless_delay(const Instance& inst) {
  const auto& c = inst.costs;
  if (!(c.delay_per_min > 0.0)) return std::numeric_limits<double>::infinity();
  return c.fixed_per_tractor / c.delay_per_min;
}

/// Repair: strip chargers, drop empty routes, rebuild each route.
inline Solution repair_chromosome(const Chromosome& c, const Evaluator& ev, const RouteBuilder& builder) {
  std::vector<std::vector<int>> groups;
  std::vector<int> cur;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const int g = c[i];
    if (g == 0) {
      if (!cur.empty()) groups.push_back(std::move(cur));
      cur.clear();
    } else if (ev.kind(g) == NodeKind::stand) {
      cur.push_back(g);
    }
  }
  if (!cur.empty()) groups.push_back(std::move(cur));
  const auto& limit = ev.instance().fleet_limit;
  int spare = limit ? std::max(0, *limit - static_cast<int>(groups.size())) : std::numeric_limits<int>::max();
  Solution s;
  for (const auto& g : groups) builder.rebuild(g, spare, s.routes);
  return s;
}

/// Greedy construction: flights in order of their selection key (the window
/// start unless perturbed), one active tractor at a time, a new tractor when
/// the current one cannot reach the next flight before its window closes.
inline Solution greedy_construct(const Evaluator& ev, const std::vector<double>& key, double acceptable_delay,
                                 double hopeless_delay) {
  const Instance& inst = ev.instance();
  RouteBuilder b(ev, hopeless_delay);
  std::vector<int> pending = inst.stand_ids();
  Solution sol;
  auto tractor = b.fresh();
  auto at_limit = [&] { return inst.fleet_limit && static_cast<int>(sol.routes.size()) + 1 >= *inst.fleet_limit; };
  bool just_charged = false;
  while (!pending.empty()) {
    // Pick the pending flight whose key is closest to the tractor's clock.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < pending.size(); ++i) {
      const double da = std::abs(key[pending[i]] - tractor.clock);
      const double db = std::abs(key[pending[pick]] - tractor.clock);
      if (da < db || (da == db && key[pending[i]] < key[pending[pick]])) pick = i;
    }
    const int j = pending[pick];
    const bool last = pending.size() == 1;
    if (!just_charged && b.needs_charge_before(tractor, j, last) && b.charge(tractor)) {
      just_charged = true;
      continue;
    }
    just_charged = false;
    const bool reachable = b.arrival_at(tractor, j) <= ev.latest(j) + acceptable_delay + 1e-9;
    if (!reachable && tractor.stands == 0) {
      throw InfeasibleError("greedy: flight at stand " + std::to_string(j) + " cannot be reached in time even by a fresh tractor");
    }
    if (!reachable && !at_limit()) {
      sol.routes.push_back(b.close(tractor));
      tractor = b.fresh();
      continue;
    }
    b.serve(tractor, j);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  if (tractor.stands > 0) sol.routes.push_back(b.close(tractor));
  return sol;
}

inline Solution greedy_initialize(const Instance& inst, const Strategy& strategy, const GAConfig& cfg = {}) {
  const Evaluator ev(inst, strategy, cfg.eval);
  std::vector<double> key(inst.node_count(), 0.0);
  for (int s : inst.stand_ids()) key[s] = ev.earliest(s);
  return greedy_construct(ev, key, cfg.acceptable_delay, cfg.hopeless_delay.value_or(default_hopeless_delay(inst)));
}

/// Window-start order perturbed by a few short-range swaps; each flight takes
/// the key of the slot it lands in.
inline std::vector<double> perturbed_keys(const Evaluator& ev, Rng& rng) {
  std::vector<int> order = ev.instance().stand_ids();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ev.earliest(a) < ev.earliest(b); });
  std::vector<double> slot_key(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) slot_key[i] = ev.earliest(order[i]);
  const int n = static_cast<int>(order.size());
  if (n >= 2) {
    const int swaps = rng.integer(1, std::max(1, n / 3));
    for (int s = 0; s < swaps; ++s) {
      const int i = rng.integer(0, n - 2);
      const int j = std::min(n - 1, i + rng.integer(1, 3));
      std::swap(order[i], order[j]);
    }
  }
  std::vector<double> key(ev.node_count(), 0.0);
  for (std::size_t i = 0; i < order.size(); ++i) key[order[i]] = slot_key[i] + 1e-6 * static_cast<double>(i);
  return key;
}

namespace detail {

struct Individual {
  Chromosome genes;
  CostBreakdown cost;
  double fitness = 0.0;
  bool feasible = false;
};

inline Chromosome stand_projection(const Chromosome& c, const Evaluator& ev) {
  Chromosome out;
  for (int g : c) {
    if (g != 0 && ev.kind(g) == NodeKind::stand) out.push_back(g);
  }
  return out;
}

// Writes a new stand order into the stand slots of a template chromosome.
inline Chromosome with_stand_order(const Chromosome& tmpl, const Chromosome& order, const Evaluator& ev) {
  Chromosome out = tmpl;
  std::size_t k = 0;
  for (auto& g : out) {
    if (g != 0 && ev.kind(g) == NodeKind::stand) g = order[k++];
  }
  return out;
}

class Engine {
 public:
  Engine(const Instance& inst, const Strategy& strategy, const GAConfig& cfg)
      : cfg_(cfg),
        ev_(inst, strategy, cfg.eval),
        builder_(ev_, cfg.hopeless_delay.value_or(default_hopeless_delay(inst))),
        rng_(cfg.seed),
        threads_(resolve_threads(cfg.threads)) {
    if (cfg.population_size < 2) throw DomainError("GA population must hold at least two individuals");
    if (cfg.max_iterations < 0) throw DomainError("GA iteration count must be nonnegative");
    if (!(cfg.generation_gap > 0.0 && cfg.generation_gap <= 1.0)) throw DomainError("generation gap must lie in (0, 1]");
    require_valid(inst);
  }

  GAResult run() {
    const auto t0 = std::chrono::steady_clock::now();
    initialize();
    record();
    const int n = cfg_.population_size;
    const int elites = std::max(1, static_cast<int>(std::lround((1.0 - cfg_.generation_gap) * n)));
    for (int it = 1; it <= cfg_.max_iterations; ++it) {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return pop_[a].cost.total < pop_[b].cost.total; });
      std::vector<double> fit(n);
      double f_max = 0.0;
      double f_sum = 0.0;
      for (int i = 0; i < n; ++i) {
        fit[i] = pop_[i].fitness;
        f_max = std::max(f_max, fit[i]);
        f_sum += fit[i];
      }
      const double f_avg = f_sum / n;
      const auto cumulative = cumulative_weights(fit);

      std::vector<Individual> next;
      next.reserve(n);
      for (int e = 0; e < elites; ++e) next.push_back(pop_[order[e]]);

      // Offspring genes are drawn sequentially; repair and scoring run in parallel.
      std::vector<Chromosome> raw;
      std::vector<int> parent;
      while (static_cast<int>(next.size() + raw.size()) < n) {
        const int a = roulette_select(cumulative, rng_);
        const int b = roulette_select(cumulative, rng_);
        const double f_pair = std::max(fit[a], fit[b]);
        Chromosome ca = pop_[a].genes;
        Chromosome cb = pop_[b].genes;
        const double pc = cfg_.baseline ? cfg_.pc.hi : adaptive_pc(f_pair, f_max, f_avg, cfg_.pc);
        if (rng_.chance(pc)) {
          auto [oa, ob] = pmx_crossover(stand_projection(ca, ev_), stand_projection(cb, ev_), rng_);
          ca = with_stand_order(ca, oa, ev_);
          cb = with_stand_order(cb, ob, ev_);
        }
        const double pm = cfg_.baseline ? 0.5 * (cfg_.pm.lo + cfg_.pm.hi)
                                        : adaptive_pm(f_pair, f_max, f_avg, cfg_.pm, cfg_.pm_orientation);
        for (Chromosome* c : {&ca, &cb}) {
          if (rng_.chance(pm)) *c = cfg_.baseline ? swap_mutation(*c, rng_) : reversal_mutation(*c, rng_);
        }
        raw.push_back(std::move(ca));
        parent.push_back(a);
        if (static_cast<int>(next.size() + raw.size()) < n) {
          raw.push_back(std::move(cb));
          parent.push_back(b);
        }
      }
      std::vector<Individual> kids(raw.size());
      parallel_for(static_cast<int>(raw.size()), threads_, [&](int i) { kids[i] = make(raw[i]); });
      for (std::size_t i = 0; i < kids.size(); ++i) {
        next.push_back(kids[i].feasible ? std::move(kids[i]) : pop_[parent[i]]);
      }
      stats_.evaluations += static_cast<long long>(kids.size());
      pop_ = std::move(next);
      record();
    }
    stats_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    GAResult out;
    out.best = decode(best_.genes, ev_.node_count());
    out.cost = best_.cost;
    out.stats = std::move(stats_);
    return out;
  }

 private:
  Individual make(const Chromosome& genes) const {
    Individual ind;
    Solution s = cfg_.repair == RepairPolicy::repair ? repair_chromosome(genes, ev_, builder_)
                                                     : decode(genes, ev_.node_count());
    const Evaluation e = ev_.evaluate(s);
    ind.genes = encode(s);
    ind.cost = e.cost;
    ind.feasible = e.feasible && e.cost.total > 0.0;
    ind.fitness = ind.feasible ? 1.0 / e.cost.total : 0.0;
    return ind;
  }

  void initialize() {
    const int n = cfg_.population_size;
    std::vector<Chromosome> seeds;
    const double hopeless = cfg_.hopeless_delay.value_or(default_hopeless_delay(ev_.instance()));
    std::vector<int> stands = ev_.instance().stand_ids();
    if (!cfg_.baseline) {
      std::vector<double> key(ev_.node_count(), 0.0);
      for (int s : stands) key[s] = ev_.earliest(s);
      seeds.push_back(encode(greedy_construct(ev_, key, cfg_.acceptable_delay, hopeless)));
      while (static_cast<int>(seeds.size()) < n) {
        const auto k = perturbed_keys(ev_, rng_);
        seeds.push_back(encode(greedy_construct(ev_, k, cfg_.acceptable_delay, hopeless)));
      }
    } else {
      const int max_routes = std::max(1, std::min<int>(static_cast<int>(stands.size()),
                                                       ev_.instance().fleet_limit.value_or(static_cast<int>(stands.size()))));
      while (static_cast<int>(seeds.size()) < n) {
        std::vector<int> perm = stands;
        for (int i = static_cast<int>(perm.size()) - 1; i > 0; --i) std::swap(perm[i], perm[rng_.integer(0, i)]);
        const int routes = rng_.integer(1, max_routes);
        std::vector<int> cuts;
        for (int r = 1; r < routes; ++r) cuts.push_back(rng_.integer(1, std::max(1, static_cast<int>(perm.size()) - 1)));
        std::sort(cuts.begin(), cuts.end());
        Chromosome c{0};
        std::size_t next_cut = 0;
        for (std::size_t i = 0; i < perm.size(); ++i) {
          while (next_cut < cuts.size() && static_cast<std::size_t>(cuts[next_cut]) == i) {
            c.push_back(0);
            ++next_cut;
          }
          c.push_back(perm[i]);
        }
        c.push_back(0);
        seeds.push_back(std::move(c));
      }
    }
    pop_.assign(n, {});
    parallel_for(n, threads_, [&](int i) { pop_[i] = make(seeds[i]); });
    stats_.evaluations += n;
    std::vector<int> ok;
    for (int i = 0; i < n; ++i) {
      if (pop_[i].feasible) ok.push_back(i);
    }
    if (ok.empty()) throw InfeasibleError("GA: no feasible individual in the initial population");
    for (int i = 0, k = 0; i < n; ++i) {
      if (!pop_[i].feasible) pop_[i] = pop_[ok[k++ % ok.size()]];
    }
  }

  void record() {
    double best = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    int best_i = 0;
    for (int i = 0; i < static_cast<int>(pop_.size()); ++i) {
      sum += pop_[i].cost.total;
      if (pop_[i].cost.total < best) {
        best = pop_[i].cost.total;
        best_i = i;
      }
    }
    if (stats_.best.empty() || best < best_.cost.total) best_ = pop_[best_i];
    stats_.best.push_back(best);
    stats_.mean.push_back(sum / static_cast<double>(pop_.size()));
    stats_.best_so_far.push_back(best_.cost.total);
  }

  GAConfig cfg_;
  Evaluator ev_;
  RouteBuilder builder_;
  Rng rng_;
  int threads_;
  std::vector<Individual> pop_;
  Individual best_;
  GAStats stats_;
};

}  // namespace detail

/// Improved GA: greedy seeding, elites plus roulette selection, adaptive PMX
/// and adaptive reversal mutation.
inline GAResult run_ga(const Instance& inst, const Strategy& strategy, GAConfig cfg = {}) {
  cfg.baseline = false;
  return detail::Engine(inst, strategy, cfg).run();
}

/// Traditional GA: random initial routes, fixed probabilities, swap mutation.
inline GAResult run_traditional_ga(const Instance& inst, const Strategy& strategy, GAConfig cfg = {}) {
  cfg.baseline = true;
  return detail::Engine(inst, strategy, cfg).run();
}

}  // namespace evtow
