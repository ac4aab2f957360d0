// Library use without the command-line tool: build an instance, solve it,
// check the result and print the cost breakdown.

#include <iostream>

#include "evtow/evtow.hpp"

int main() {
  using namespace evtow;

  const Instance inst = generate_instance(3, Layout::scenario2, 16);
  const Strategy strategy{15, 0.9};

  GAConfig cfg;
  cfg.population_size = 40;
  cfg.max_iterations = 120;
  cfg.seed = 3;

  const GAResult r = run_ga(inst, strategy, cfg);
  const Solution best = prune_empty(r.best);
  if (!check_feasibility(best, inst, strategy).empty()) {
    std::cerr << "solution breaks a hard rule\n";
    return 1;
  }

  std::cout << best.routes.size() << " tractors\n" << routes_to_text(best.routes);
  const CostBreakdown c = r.cost;
  std::cout << "fixed " << c.fixed << ", charging " << c.charging << ", maintenance " << c.maintenance << ", time "
            << c.time_penalty << ", total " << c.total << '\n';

  const TowingWindow w = derive_towing_window(600, 660, default_turnaround_template());
  std::cout << "towing window for a 60 min turnaround at 10:00: [" << w.earliest << ", " << w.latest << "]\n";
  return 0;
}
