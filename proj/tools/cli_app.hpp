#pragma once

// The evtow command-line tool. run_cli() is kept in a header so the tests and
// the acceptance checks can drive it in-process.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "evtow/evtow.hpp"

namespace evtow::cli {

inline constexpr const char* kToolVersion = "1.0.0";

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string instance_hash(const Instance& inst) { return "fnv1a64:" + hex64(fnv1a64(instance_to_text(inst))); }

inline std::string num(double v, int digits = 6) { return detail::fmt(v, digits); }

struct Globals {
  std::uint64_t seed = 1;
  std::string config_path;
  std::string out_dir = ".";
  bool quiet = false;
  int threads = 0;
};

class Context {
 public:
  Context(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  GAConfig config() const {
    GAConfig c = g_.config_path.empty() ? GAConfig{} : load_config(g_.config_path);
    c.seed = g_.seed;
    c.threads = g_.threads;
    return c;
  }

  std::string path(const std::string& name) const { return (std::filesystem::path(g_.out_dir) / name).string(); }

  void write(const std::string& name, const std::string& text) {
    std::filesystem::create_directories(g_.out_dir);
    detail::write_file(path(name), text);
    outputs_.push_back(name);
  }

  void write_at(const std::string& full_path, const std::string& text) {
    const auto parent = std::filesystem::path(full_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    detail::write_file(full_path, text);
    outputs_.push_back(full_path);
  }

  std::ostream& say() {
    static std::ostringstream sink;
    if (g_.quiet) {
      sink.str("");
      return sink;
    }
    return out_;
  }

  /// Manifest beside the outputs: tool version, verb, seed, instance hash and full configuration.
  void manifest(const std::string& verb, const Json& arguments, const std::optional<Instance>& inst,
                const std::optional<GAConfig>& config) {
    Json m;
    m["tool"] = "evtow";
    m["version"] = kToolVersion;
    m["verb"] = verb;
    m["seed"] = g_.seed;
    m["instance_hash"] = inst ? Json(instance_hash(*inst)) : Json(nullptr);
    m["config"] = config ? config_to_json(*config) : Json(nullptr);
    m["arguments"] = arguments;
    m["outputs"] = outputs_;
    std::filesystem::create_directories(g_.out_dir);
    detail::write_file(path("manifest.json"), m.dump(2) + "\n");
  }

  const Globals& globals() const { return g_; }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::vector<std::string> outputs_;
};

inline std::string cost_line(const CostBreakdown& c) {
  std::ostringstream s;
  s << "f1=" << detail::fmt(c.fixed) << " f2=" << detail::fmt(c.charging) << " f3=" << detail::fmt(c.maintenance)
    << " f4=" << detail::fmt(c.time_penalty) << " total=" << detail::fmt(c.total);
  return s.str();
}

inline Json cost_json(const CostBreakdown& c) {
  Json j;
  j["fixed"] = c.fixed;
  j["charging"] = c.charging;
  j["maintenance"] = c.maintenance;
  j["time_penalty"] = c.time_penalty;
  j["total"] = c.total;
  return j;
}

inline std::string trace_csv(const Evaluator& ev, const Solution& s) {
  std::ostringstream out;
  out << "route,position,node,kind,arrival,start,departure,wait,delay,soc_arrival,soc_departure,charged_kwh,"
         "charge_min\n";
  for (std::size_t r = 0; r < s.routes.size(); ++r) {
    const RouteTrace t = ev.simulate(s.routes[r]);
    for (std::size_t p = 0; p < t.visits.size(); ++p) {
      const Visit& v = t.visits[p];
      out << r << ',' << p << ',' << v.node << ',' << to_string(v.kind) << ',' << num(v.arrival, 4) << ','
          << num(v.start, 4) << ',' << num(v.departure, 4) << ',' << num(v.wait, 4) << ',' << num(v.delay, 4) << ','
          << num(v.soc_arrival, 4) << ',' << num(v.soc_departure, 4) << ','
          << (v.charge ? num(v.charge->soc_after - v.charge->soc_before, 4) : "") << ','
          << (v.charge ? num(v.charge->duration_min, 4) : "") << '\n';
    }
  }
  return out.str();
}

inline Json solution_json(const Evaluator& ev, const Solution& s) {
  Json j;
  const Evaluation e = ev.evaluate(s);
  j["cost"] = cost_json(e.cost);
  j["required_tractors"] = static_cast<int>(s.routes.size());
  j["feasible"] = e.feasible;
  Json routes = Json::array();
  double distance = 0.0;
  double energy = 0.0;
  for (const auto& r : s.routes) {
    const RouteTrace t = ev.simulate(r);
    const RouteScore sc = ev.score(r);
    Json jr;
    jr["nodes"] = r;
    jr["travel_distance_m"] = t.distance_m;
    jr["electricity_kwh"] = t.energy_kwh;
    jr["charged_kwh"] = t.charged_kwh;
    jr["soc_return_kwh"] = t.soc_return;
    jr["total_cost"] = sc.cost.total;
    routes.push_back(std::move(jr));
    distance += t.distance_m;
    energy += t.energy_kwh;
  }
  j["travel_distance_m"] = distance;
  j["electricity_kwh"] = energy;
  j["routes"] = std::move(routes);
  Json violations = Json::array();
  for (const auto& v : ev.check(s)) {
    Json jv;
    jv["rule"] = v.rule;
    jv["route"] = v.route;
    jv["position"] = v.position;
    jv["message"] = v.message;
    violations.push_back(std::move(jv));
  }
  j["violations"] = std::move(violations);
  return j;
}

inline std::string stats_csv(const GAStats& s) {
  std::ostringstream out;
  out << "iteration,best,mean,best_so_far\n";
  for (std::size_t i = 0; i < s.best.size(); ++i) {
    out << i << ',' << num(s.best[i], 4) << ',' << num(s.mean[i], 4) << ',' << num(s.best_so_far[i], 4) << '\n';
  }
  return out.str();
}

inline Strategy strategy_of(double speed, double gamma) {
  Strategy s{speed, gamma};
  s.validate();
  return s;
}

// Verb handlers.

inline void do_generate(Context& ctx, const std::string& layout, int flights, const std::string& out,
                        std::optional<int> fleet_limit, const std::string& template_path) {
  GeneratorOptions opt;
  opt.fleet_limit = fleet_limit;
  if (!template_path.empty()) opt.turnaround = load_template(template_path);
  const Instance inst = generate_instance(ctx.globals().seed, layout_from_string(layout), flights, opt);
  require_valid(inst);
  const std::string text = instance_to_text(inst);
  if (out.empty()) {
    ctx.write("instance.json", text);
  } else {
    ctx.write_at(out, text);
  }
  ctx.say() << "generated " << inst.name << ": " << inst.node_count() << " nodes, " << inst.flights.size()
            << " flights, mean stand distance " << detail::fmt(mean_stand_distance(inst), 1) << " m\n";
  Json args;
  args["layout"] = layout;
  args["flights"] = flights;
  args["fleet_limit"] = fleet_limit ? Json(*fleet_limit) : Json(nullptr);
  args["template"] = template_path;
  ctx.manifest("generate", args, inst, std::nullopt);
}

inline void do_windows(Context& ctx, const std::string& instance_path, std::optional<double> arrival,
                       std::optional<double> departure, const std::string& template_path) {
  const TurnaroundTemplate tpl = template_path.empty() ? default_turnaround_template() : load_template(template_path);
  Json args;
  args["template"] = template_path;
  if (!instance_path.empty()) {
    const Instance inst = load_instance(instance_path);
    std::ostringstream csv;
    csv << "flight,stand,arrival,departure,earliest,latest\n";
    for (const auto& f : inst.flights) {
      const TowingWindow w = derive_towing_window(f.arrival, f.departure, tpl);
      csv << f.id << ',' << f.stand << ',' << num(f.arrival, 2) << ',' << num(f.departure, 2) << ','
          << num(w.earliest, 2) << ',' << num(w.latest, 2) << '\n';
    }
    ctx.write("windows.csv", csv.str());
    ctx.say() << "derived towing windows for " << inst.flights.size() << " flights\n";
    args["instance"] = instance_path;
    ctx.manifest("windows", args, inst, std::nullopt);
    return;
  }
  if (!arrival || !departure) throw CLI::ValidationError("windows needs --instance or both --arrival and --departure");
  const int transit = static_cast<int>(std::lround(*departure - *arrival));
  const Stn stn = build_stn(transit, tpl);
  const StnMinimization m = minimize_stn(stn);
  if (!m.consistent) {
    std::string cycle;
    for (int v : m.witness_cycle) cycle += (cycle.empty() ? "" : " -> ") + stn.variables[v];
    throw InfeasibleError("turnaround template cannot fit a transit of " + std::to_string(transit) + " min; cycle: " + cycle);
  }
  std::ostringstream csv;
  csv << "event,earliest,latest\n";
  for (int i = 0; i < stn.size(); ++i) {
    csv << stn.variables[i] << ',' << num(*arrival + static_cast<double>(m.lower(0, i)), 2) << ','
        << num(*arrival + static_cast<double>(m.upper(0, i)), 2) << '\n';
  }
  ctx.write("windows.csv", csv.str());
  const TowingWindow w = towing_window(stn, m, *arrival, tpl.towing_activity);
  ctx.say() << "towing window [" << num(w.earliest, 2) << ", " << num(w.latest, 2) << "]\n";
  args["arrival"] = *arrival;
  args["departure"] = *departure;
  ctx.manifest("windows", args, std::nullopt, std::nullopt);
}

inline void do_solve(Context& ctx, const std::string& instance_path, double speed, double gamma, bool baseline,
                     std::optional<int> population, std::optional<int> iterations) {
  const Instance inst = load_instance(instance_path);
  const Strategy strategy = strategy_of(speed, gamma);
  GAConfig cfg = ctx.config();
  if (population) cfg.population_size = *population;
  if (iterations) cfg.max_iterations = *iterations;
  const GAResult r = baseline ? run_traditional_ga(inst, strategy, cfg) : run_ga(inst, strategy, cfg);
  const Evaluator ev(inst, strategy, cfg.eval);
  const Solution best = prune_empty(r.best);
  ctx.write("solution.txt", routes_to_text(best.routes));
  ctx.write("cost.json", solution_json(ev, best).dump(2) + "\n");
  ctx.write("stats.csv", stats_csv(r.stats));
  ctx.write("trace.csv", trace_csv(ev, best));
  ctx.say() << (baseline ? "traditional" : "improved") << " GA: " << best.routes.size() << " tractors, "
            << cost_line(r.cost) << '\n';
  Json args;
  args["instance"] = instance_path;
  args["speed_kmh"] = speed;
  args["gamma"] = gamma;
  args["baseline"] = baseline;
  args["population_size"] = cfg.population_size;
  args["max_iterations"] = cfg.max_iterations;
  ctx.manifest("solve", args, inst, cfg);
}

inline void do_evaluate(Context& ctx, const std::string& instance_path, const std::string& solution_path,
                        double speed, double gamma, bool hard) {
  const Instance inst = load_instance(instance_path);
  const Strategy strategy = strategy_of(speed, gamma);
  EvalSettings settings = ctx.config().eval;
  if (hard) settings.windows = WindowMode::hard;
  const Evaluator ev(inst, strategy, settings);
  Solution s;
  s.routes = routes_from_text(detail::read_file(solution_path));
  s = prune_empty(s);
  ev.total_cost(s);  // structural problems stop here
  const Json j = solution_json(ev, s);
  ctx.write("cost.json", j.dump(2) + "\n");
  ctx.write("trace.csv", trace_csv(ev, s));
  ctx.say() << s.routes.size() << " tractors, " << cost_line(ev.evaluate(s).cost) << ", "
            << j["violations"].size() << " violations\n";
  for (const auto& v : j["violations"]) ctx.say() << "  " << v["rule"].get<std::string>() << ": " << v["message"].get<std::string>() << '\n';
  Json args;
  args["instance"] = instance_path;
  args["solution"] = solution_path;
  args["speed_kmh"] = speed;
  args["gamma"] = gamma;
  args["windows"] = to_string(settings.windows);
  ctx.manifest("evaluate", args, inst, std::nullopt);
}

inline std::vector<std::uint64_t> seeds_or_default(const std::vector<std::uint64_t>& seeds, std::uint64_t fallback) {
  return seeds.empty() ? std::vector<std::uint64_t>{fallback} : seeds;
}

inline void do_sweep(Context& ctx, const std::string& instance_path, std::vector<double> speeds,
                     std::vector<double> gammas, const std::vector<std::uint64_t>& seed_list) {
  const Instance inst = load_instance(instance_path);
  const auto seeds = seeds_or_default(seed_list, ctx.globals().seed);
  const GAConfig cfg = ctx.config();
  const SweepReport r = sweep(inst, speeds, gammas, cfg, seeds);
  ctx.write("grid.csv", grid_csv(r));
  for (const auto& [g, csv] : emit_cost_curves(r)) ctx.write("curve_gamma_" + detail::fmt_param(g) + ".csv", csv);
  const std::string summary = summary_text(r);
  ctx.write("summary.txt", summary);
  ctx.say() << summary;
  Json args;
  args["instance"] = instance_path;
  args["speeds"] = r.speeds;
  args["gammas"] = r.gammas;
  args["seeds"] = seeds;
  ctx.manifest("sweep", args, inst, cfg);
}

inline void do_compare_ga(Context& ctx, const std::string& instance_path, double speed, double gamma,
                          const std::vector<std::uint64_t>& seed_list) {
  const Instance inst = load_instance(instance_path);
  const auto seeds = seeds_or_default(seed_list, ctx.globals().seed);
  const auto runs = compare_ga(inst, strategy_of(speed, gamma), ctx.config(), seeds);
  ctx.write("compare_ga.csv", compare_ga_csv(runs));
  std::ostringstream curves;
  curves << "iteration";
  for (const auto& r : runs) curves << ',' << (r.baseline ? "traditional_" : "improved_") << r.seed;
  curves << '\n';
  const std::size_t len = runs.empty() ? 0 : runs.front().best_so_far.size();
  for (std::size_t i = 0; i < len; ++i) {
    curves << i;
    for (const auto& r : runs) curves << ',' << num(r.best_so_far[i], 4);
    curves << '\n';
  }
  ctx.write("convergence.csv", curves.str());
  // Wall time is not reproducible, so it lives in its own file.
  ctx.write("compare_ga_timing.csv", compare_ga_timing_csv(runs));
  std::vector<double> imp;
  std::vector<double> trad;
  for (const auto& r : runs) (r.baseline ? trad : imp).push_back(r.cost.total);
  ctx.say() << "median objective: improved " << detail::fmt(median(imp)) << ", traditional " << detail::fmt(median(trad))
            << '\n';
  Json args;
  args["instance"] = instance_path;
  args["speed_kmh"] = speed;
  args["gamma"] = gamma;
  args["seeds"] = seeds;
  ctx.manifest("compare-ga", args, inst, ctx.config());
}

inline void do_compare_energy(Context& ctx, const std::string& instance_path, double speed, double gamma,
                              const std::vector<std::uint64_t>& seed_list) {
  const Instance inst = load_instance(instance_path);
  const auto seeds = seeds_or_default(seed_list, ctx.globals().seed);
  const AblationReport r = energy_model_ablation(inst, strategy_of(speed, gamma), ctx.config(), seeds);
  ctx.write("energy_ablation.csv", ablation_csv(r));
  std::ostringstream s;
  const double tt = r.mean_total(EnergyModelKind::traditional);
  const double ss = r.mean_total(EnergyModelKind::start_stop);
  s << "mean objective: traditional " << detail::fmt(tt) << ", start-stop " << detail::fmt(ss) << " ("
    << detail::fmt(tt > 0 ? 100.0 * (ss - tt) / tt : 0.0) << "%)\n";
  s << "mean tractors: traditional " << detail::fmt(r.mean_tractors(EnergyModelKind::traditional)) << ", start-stop "
    << detail::fmt(r.mean_tractors(EnergyModelKind::start_stop)) << '\n';
  ctx.write("energy_summary.txt", s.str());
  ctx.say() << s.str();
  Json args;
  args["instance"] = instance_path;
  args["speed_kmh"] = speed;
  args["gamma"] = gamma;
  args["seeds"] = seeds;
  ctx.manifest("compare-energy", args, inst, ctx.config());
}

inline void do_oracle_check(Context& ctx, int count, double speed, double gamma) {
  const auto rows = oracle_check(count, ctx.globals().seed, strategy_of(speed, gamma), ctx.config());
  ctx.write("oracle_check.csv", oracle_check_csv(rows));
  int match = 0;
  int beats = 0;
  for (const auto& r : rows) {
    match += r.status == "match";
    beats += r.status == "beats_oracle";
    ctx.say() << "seed " << r.seed << " (" << r.flights << " flights): " << r.status << '\n';
  }
  ctx.say() << match << "/" << rows.size() << " match the exact optimum";
  if (beats) ctx.say() << ", " << beats << " below it (evaluator bug)";
  ctx.say() << '\n';
  Json args;
  args["count"] = count;
  args["speed_kmh"] = speed;
  args["gamma"] = gamma;
  ctx.manifest("oracle-check", args, std::nullopt, ctx.config());
}

inline void do_forecast(Context& ctx, double t1, double t2, const std::vector<double>& rates) {
  ForecastRates r;
  if (!rates.empty()) {
    if (rates.size() != 5) throw CLI::ValidationError("--rates takes five values: normal,recovery1,recovery2,taper,saturated");
    r = {rates[0], rates[1], rates[2], rates[3], rates[4]};
  }
  if (!(t1 > 0.0 && t2 > 0.0)) throw DomainError("forecast: flight counts must be positive");
  const Forecast f = forecast_flights(t1, t2, r);
  Json j;
  j["t1_short"] = f.t1_short;
  j["t2_short"] = f.t2_short;
  j["t1_mid"] = f.t1_mid;
  j["t2_mid"] = f.t2_mid;
  j["scenario_sizes"] = {round_to_ten(f.t1_short), round_to_ten(f.t2_short), round_to_ten(f.t1_mid),
                         round_to_ten(f.t2_mid)};
  ctx.write("forecast.json", j.dump(2) + "\n");
  ctx.say() << "T1 short " << detail::fmt(f.t1_short, 1) << "\nT2 short " << detail::fmt(f.t2_short, 1) << "\nT1 mid "
            << detail::fmt(f.t1_mid, 1) << "\nT2 mid " << detail::fmt(f.t2_mid, 1) << '\n';
  Json args;
  args["t1"] = t1;
  args["t2"] = t2;
  args["rates"] = {r.normal, r.recovery1, r.recovery2, r.taper, r.saturated};
  ctx.manifest("forecast", args, std::nullopt, std::nullopt);
}

inline void do_fig1(Context& ctx, const std::vector<double>& speeds, double length, double step) {
  if (!(step > 0.0)) throw DomainError("fig1: step must be positive");
  if (!(length > 0.0 && length <= 100.0)) throw DomainError("fig1: length must lie in (0, 100] m");
  const VehicleParams p;
  std::ostringstream csv;
  csv << "distance_m";
  for (double v : speeds) csv << ",start_stop_v" << detail::fmt_param(v) << ",traditional_v" << detail::fmt_param(v);
  csv << '\n';
  const int steps = static_cast<int>(std::lround(length / step));
  for (int i = 0; i <= steps; ++i) {
    const double l = std::min(length, i * step);
    csv << num(l, 3);
    for (double v : speeds) csv << ',' << num(cumulative_profile(l, v, p), 8) << ',' << num(traditional_energy(l, v, p), 8);
    csv << '\n';
  }
  ctx.write("fig1.csv", csv.str());
  for (double v : speeds) {
    ctx.say() << "v=" << detail::fmt_param(v) << " m/s over " << detail::fmt_param(length)
              << " m: start-stop " << num(travel_segment_energy(length, v, p), 5) << " kWh, traditional "
              << num(traditional_energy(length, v, p), 5) << " kWh\n";
  }
  Json args;
  args["speeds_mps"] = speeds;
  args["length_m"] = length;
  args["step_m"] = step;
  ctx.manifest("fig1", args, std::nullopt, std::nullopt);
}

inline void do_charge_curve(Context& ctx, double step, double from, const std::vector<double>& gammas) {
  const VehicleParams p;
  const ChargingCurve c;
  const double b = p.battery_capacity_kwh;
  std::ostringstream curve;
  curve << "minutes,soc_kwh\n";
  for (const auto& [t, soc] : charge_curve_points(b, c, step)) curve << num(t, 4) << ',' << num(soc, 4) << '\n';
  ctx.write("charge_curve.csv", curve.str());
  std::ostringstream times;
  times << "from_kwh,gamma,target_kwh,minutes\n";
  for (double g : gammas) {
    const double m = charging_time(from, g, b, c);
    times << num(from, 3) << ',' << detail::fmt_param(g) << ',' << num(g * b, 3) << ',' << num(m, 6) << '\n';
    ctx.say() << "charge " << detail::fmt_param(from) << " -> " << detail::fmt_param(g * b) << " kWh: " << num(m, 3)
              << " min\n";
  }
  ctx.write("charge_times.csv", times.str());
  Json args;
  args["step_min"] = step;
  args["from_kwh"] = from;
  args["gammas"] = gammas;
  ctx.manifest("charge-curve", args, std::nullopt, std::nullopt);
}

inline void print_error(std::ostream& err, const char* kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  err << j.dump() << '\n';
}

/// Exit codes: 0 success, 1 domain or input error, 2 usage error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Electric tractor dispatching: windows, routing, strategy sweeps", "evtow"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--config", g.config_path, "GA configuration JSON")->check(CLI::ExistingFile);
  app.add_option("--out-dir", g.out_dir, "Directory for outputs and the manifest");
  app.add_flag("--quiet", g.quiet, "Print nothing on success");
  app.add_option("--threads", g.threads, "Worker threads (default: EVTOW_THREADS or all cores)")->check(CLI::NonNegativeNumber);

  double speed = 25.0;
  double gamma = 0.8;
  auto add_strategy = [&](CLI::App* sub) {
    sub->add_option("--speed", speed, "Maximum travel speed, km/h");
    sub->add_option("--gamma", gamma, "Charge target as a fraction of capacity");
  };
  std::string instance_path;
  auto add_instance = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--instance", instance_path, "Instance JSON")->check(CLI::ExistingFile);
    if (required) o->required();
  };
  std::vector<std::uint64_t> seeds;

  auto* gen = app.add_subcommand("generate", "Generate a seeded synthetic instance");
  std::string layout = "s1";
  int flights = 40;
  std::string gen_out;
  std::optional<int> fleet_limit;
  std::string template_path;
  gen->add_option("--layout", layout, "s1, s2 or compact");
  gen->add_option("--flights", flights, "Number of flights")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "Instance path (default: <out-dir>/instance.json)");
  gen->add_option("--fleet-limit", fleet_limit, "Maximum tractors")->check(CLI::PositiveNumber);
  gen->add_option("--template", template_path, "Turnaround template JSON")->check(CLI::ExistingFile);

  auto* win = app.add_subcommand("windows", "Derive towing windows from the turnaround template");
  std::optional<double> arrival;
  std::optional<double> departure;
  add_instance(win, false);
  win->add_option("--arrival", arrival, "Scheduled arrival, min from midnight");
  win->add_option("--departure", departure, "Scheduled departure, min from midnight");
  win->add_option("--template", template_path, "Turnaround template JSON")->check(CLI::ExistingFile);

  auto* solve = app.add_subcommand("solve", "Run the GA on an instance");
  bool baseline = false;
  std::optional<int> population;
  std::optional<int> iterations;
  add_instance(solve, true);
  add_strategy(solve);
  solve->add_flag("--baseline", baseline, "Run the traditional GA");
  solve->add_option("--population", population, "Population size")->check(CLI::Range(2, 1000000));
  solve->add_option("--iterations", iterations, "Iterations")->check(CLI::NonNegativeNumber);

  auto* eval = app.add_subcommand("evaluate", "Cost and trace of a given solution");
  std::string solution_path;
  bool hard = false;
  add_instance(eval, true);
  add_strategy(eval);
  eval->add_option("--solution", solution_path, "Routes, one line of node ids each")->required()->check(CLI::ExistingFile);
  eval->add_flag("--hard-windows", hard, "Report late arrivals as violations");

  auto* sw = app.add_subcommand("sweep", "Speed x charge-target grid");
  std::vector<double> speeds = default_speeds();
  std::vector<double> gammas = default_gammas();
  add_instance(sw, true);
  sw->add_option("--speeds", speeds, "Speeds, km/h")->delimiter(',');
  sw->add_option("--gammas", gammas, "Charge targets")->delimiter(',');
  sw->add_option("--seeds", seeds, "GA seeds (default: --seed)")->delimiter(',');

  auto* cmp = app.add_subcommand("compare-ga", "Improved against traditional GA");
  add_instance(cmp, true);
  add_strategy(cmp);
  cmp->add_option("--seeds", seeds, "GA seeds (default: --seed)")->delimiter(',');

  auto* ce = app.add_subcommand("compare-energy", "Start-stop against constant-speed energy model");
  add_instance(ce, true);
  add_strategy(ce);
  ce->add_option("--seeds", seeds, "GA seeds (default: --seed)")->delimiter(',');

  auto* oc = app.add_subcommand("oracle-check", "GA against the exact solver on tiny instances");
  int count = 10;
  add_strategy(oc);
  oc->add_option("--count", count, "Number of instances (seeds --seed, --seed+1, ...)")->check(CLI::PositiveNumber);

  auto* fc = app.add_subcommand("forecast", "Flight-scale forecast for the two terminals");
  double t1 = 103.0;
  double t2 = 44.0;
  std::vector<double> rates;
  fc->add_option("--t1", t1, "Current terminal 1 flights");
  fc->add_option("--t2", t2, "Current terminal 2 flights");
  fc->add_option("--rates", rates, "normal,recovery1,recovery2,taper,saturated")->delimiter(',');

  auto* f1 = app.add_subcommand("fig1", "Cumulative energy over a short segment, both models");
  std::vector<double> fig_speeds{3.0, 5.0, 7.0};
  double length = 100.0;
  double step = 1.0;
  f1->add_option("--speeds", fig_speeds, "Speeds, m/s")->delimiter(',');
  f1->add_option("--length", length, "Segment length, m");
  f1->add_option("--step", step, "Sampling step, m");

  auto* cc = app.add_subcommand("charge-curve", "Charging curve samples and charging times");
  double cc_step = 1.0;
  double from = 30.0;
  std::vector<double> cc_gammas = default_gammas();
  cc->add_option("--step", cc_step, "Sampling step, min");
  cc->add_option("--from", from, "Starting charge, kWh");
  cc->add_option("--gammas", cc_gammas, "Charge targets")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    return 2;
  }

  Context ctx(g, out);
  try {
    if (*gen) do_generate(ctx, layout, flights, gen_out, fleet_limit, template_path);
    else if (*win) do_windows(ctx, instance_path, arrival, departure, template_path);
    else if (*solve) do_solve(ctx, instance_path, speed, gamma, baseline, population, iterations);
    else if (*eval) do_evaluate(ctx, instance_path, solution_path, speed, gamma, hard);
    else if (*sw) do_sweep(ctx, instance_path, speeds, gammas, seeds);
    else if (*cmp) do_compare_ga(ctx, instance_path, speed, gamma, seeds);
    else if (*ce) do_compare_energy(ctx, instance_path, speed, gamma, seeds);
    else if (*oc) do_oracle_check(ctx, count, speed, gamma);
    else if (*fc) do_forecast(ctx, t1, t2, rates);
    else if (*f1) do_fig1(ctx, fig_speeds, length, step);
    else if (*cc) do_charge_curve(ctx, cc_step, from, cc_gammas);
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    print_error(err, "input", e.what());
    return 1;
  } catch (const InfeasibleError& e) {
    print_error(err, "infeasible", e.what());
    return 1;
  } catch (const StructuralError& e) {
    print_error(err, "structure", e.what());
    return 1;
  } catch (const DomainError& e) {
    print_error(err, "domain", e.what());
    return 1;
  } catch (const Error& e) {
    print_error(err, "error", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace evtow::cli
