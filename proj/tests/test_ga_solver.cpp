#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "test_support.hpp"

using namespace evtow;

namespace {

GAConfig small_config(int population = 20, int iterations = 60) {
  GAConfig c;
  c.population_size = population;
  c.max_iterations = iterations;
  c.threads = 1;
  return c;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(GaCoding, DecodeExample) {
  const Solution s = decode({0, 2, 4, 0, 1, 3, 6, 5, 0}, 7);
  ASSERT_EQ(s.routes.size(), 2u);
  EXPECT_EQ(s.routes[0], (Route{0, 2, 4, 0}));
  EXPECT_EQ(s.routes[1], (Route{0, 1, 3, 6, 5, 0}));
  EXPECT_TRUE(decode({0, 0}, 3).routes.empty());
  EXPECT_EQ(decode({0, 0, 1, 0, 0}, 3).routes.size(), 1u);
  EXPECT_THROW(decode({1, 0}, 3), StructuralError);
  EXPECT_THROW(decode({0, 9, 0}, 3), StructuralError);
}

TEST(GaCoding, EncodeDecodeRoundTrip) {
  std::mt19937_64 gen(8);
  for (int t = 0; t < 1000; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 12)(gen);
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 1);
    std::shuffle(ids.begin(), ids.end(), gen);
    Solution s;
    std::size_t i = 0;
    while (i < ids.size()) {
      const std::size_t len = std::uniform_int_distribution<std::size_t>(1, 5)(gen);
      Route r{0};
      for (std::size_t k = 0; k < len && i < ids.size(); ++k) r.push_back(ids[i++]);
      r.push_back(0);
      s.routes.push_back(r);
    }
    EXPECT_EQ(decode(encode(s), n + 1), s);
  }
  EXPECT_EQ(encode(Solution{}), (Chromosome{0, 0}));
}

TEST(GaOperators, PmxExample) {
  const auto [c1, c2] = pmx_crossover_at({1, 2, 3, 4, 5}, {3, 5, 1, 4, 2}, 2, 3);
  EXPECT_EQ(c1, (std::vector<int>{3, 2, 1, 4, 5}));
  EXPECT_EQ(c2, (std::vector<int>{1, 5, 3, 4, 2}));
}

TEST(GaOperators, PmxEdgeCases) {
  const std::vector<int> a{4, 1, 3, 2};
  const auto same = pmx_crossover_at(a, a, 1, 2);
  EXPECT_EQ(same.first, a);
  EXPECT_EQ(same.second, a);
  const std::vector<int> b{2, 3, 1, 4};
  const auto whole = pmx_crossover_at(a, b, 0, 3);
  EXPECT_EQ(whole.first, b);
  EXPECT_EQ(whole.second, a);
  EXPECT_THROW(pmx_crossover_at(a, {1, 2, 3}, 0, 1), StructuralError);
  EXPECT_THROW(pmx_crossover_at(a, {1, 1, 2, 3}, 0, 1), StructuralError);
  EXPECT_THROW(pmx_crossover_at(a, b, 2, 1), DomainError);
}

TEST(GaOperators, PmxChildrenArePermutationsProperty) {
  Rng rng(99);
  std::mt19937_64 gen(99);
  for (int t = 0; t < 10000; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 15)(gen);
    std::vector<int> a(n);
    std::iota(a.begin(), a.end(), 1);
    std::vector<int> b = a;
    std::shuffle(a.begin(), a.end(), gen);
    std::shuffle(b.begin(), b.end(), gen);
    std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
    std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 1)(gen);
    if (i > j) std::swap(i, j);
    const auto [c1, c2] = pmx_crossover_at(a, b, i, j);
    EXPECT_EQ(sorted(c1), sorted(a));
    EXPECT_EQ(sorted(c2), sorted(a));
    for (std::size_t k = i; k <= j; ++k) {
      EXPECT_EQ(c1[k], b[k]);
      EXPECT_EQ(c2[k], a[k]);
    }
    const auto [r1, r2] = pmx_crossover(a, b, rng);
    EXPECT_EQ(sorted(r1), sorted(a));
    EXPECT_EQ(sorted(r2), sorted(a));
  }
}

TEST(GaOperators, ReversalExamples) {
  const Chromosome c{0, 1, 2, 3, 4, 0};
  EXPECT_EQ(reverse_segment(c, 1, 3), (Chromosome{0, 3, 2, 1, 4, 0}));
  EXPECT_EQ(reverse_segment(c, 2, 2), c);
  EXPECT_EQ(reverse_segment(reverse_segment(c, 1, 4), 1, 4), c);
  EXPECT_THROW(reverse_segment(c, 3, 1), DomainError);
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    const Chromosome m = reversal_mutation({0, 1, 2, 0, 3, 4, 5, 0}, rng);
    EXPECT_EQ(m.front(), 0);
    EXPECT_EQ(m.back(), 0);
    EXPECT_EQ(sorted(m), (std::vector<int>{0, 0, 0, 1, 2, 3, 4, 5}));
    const Chromosome s = swap_mutation({0, 1, 2, 0, 3, 4, 5, 0}, rng);
    EXPECT_EQ(s.front(), 0);
    EXPECT_EQ(s.back(), 0);
    EXPECT_EQ(sorted(s), (std::vector<int>{0, 0, 0, 1, 2, 3, 4, 5}));
  }
}

TEST(GaOperators, AdaptiveProbabilities) {
  const ProbabilityRange pc{0.6, 0.8};
  EXPECT_DOUBLE_EQ(adaptive_pc(10, 10, 6, pc), 0.6);
  EXPECT_DOUBLE_EQ(adaptive_pc(6, 10, 6, pc), 0.8);
  EXPECT_DOUBLE_EQ(adaptive_pc(5, 10, 6, pc), 0.8);
  EXPECT_NEAR(adaptive_pc(8, 10, 6, pc), 0.7, 1e-12);
  EXPECT_DOUBLE_EQ(adaptive_pc(5, 5, 5, pc), 0.8);

  const ProbabilityRange pm{0.009, 0.2};
  EXPECT_DOUBLE_EQ(adaptive_pm(10, 10, 6, pm), 0.2);
  EXPECT_NEAR(adaptive_pm(6, 10, 6, pm), 0.009, 1e-12);
  EXPECT_DOUBLE_EQ(adaptive_pm(5, 10, 6, pm), 0.2);
  EXPECT_NEAR(adaptive_pm(10, 10, 6, pm, PmOrientation::srinivas), 0.009, 1e-12);
  EXPECT_DOUBLE_EQ(adaptive_pm(6, 10, 6, pm, PmOrientation::srinivas), 0.2);

  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 1000; ++t) {
    const double avg = u(gen);
    const double mx = avg + u(gen);
    const double f = u(gen) * 2;
    const double p1 = adaptive_pc(f, mx, avg, pc);
    const double p2 = adaptive_pm(f, mx, avg, pm);
    EXPECT_GE(p1, pc.lo);
    EXPECT_LE(p1, pc.hi);
    EXPECT_GE(p2, pm.lo);
    EXPECT_LE(p2, pm.hi);
  }
}

TEST(GaOperators, RouletteMatchesWeights) {
  const std::vector<double> w{1, 2, 3, 4};
  const auto cum = cumulative_weights(w);
  EXPECT_EQ(cum, (std::vector<double>{1, 3, 6, 10}));
  Rng rng(2024);
  std::vector<int> hits(4, 0);
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) ++hits[roulette_select(cum, rng)];
  double chi2 = 0;
  for (int i = 0; i < 4; ++i) {
    const double expect = draws * w[i] / 10.0;
    chi2 += (hits[i] - expect) * (hits[i] - expect) / expect;
  }
  EXPECT_LT(chi2, 16.27);  // 3 degrees of freedom, p = 0.001
  const auto zero = cumulative_weights({0, 1, 0});
  for (int i = 0; i < 100; ++i) EXPECT_EQ(roulette_select(zero, rng), 1);
}

TEST(GaSolver, GreedyOnGolden) {
  const Solution s = greedy_initialize(fixtures::golden(), Strategy{25, 0.8});
  ASSERT_EQ(s.routes.size(), 1u);
  EXPECT_EQ(s.routes[0], (Route{0, 1, 2, 0}));
}

TEST(GaSolver, GreedyOpensTractorPerConflictingFlight) {
  using fixtures::StandSpec;
  const Instance inst = fixtures::planar({0, 0}, {{400, 0, 10, 12}, {0, 400, 10, 12}, {-400, 0, 10, 12}});
  const Solution s = greedy_initialize(inst, Strategy{25, 0.8});
  EXPECT_EQ(prune_empty(s).routes.size(), 3u);
  EXPECT_TRUE(check_feasibility(s, inst, Strategy{25, 0.8}).empty());
}

TEST(GaSolver, GoldenMatchesOracle) {
  const Instance g = fixtures::golden();
  const GAResult r = run_ga(g, Strategy{25, 0.8}, small_config());
  const OracleResult o = exact_solve(g, Strategy{25, 0.8});
  ASSERT_TRUE(o.feasible);
  EXPECT_NEAR(r.cost.total, o.cost.total, 1e-9);
  EXPECT_TRUE(check_feasibility(r.best, g, Strategy{25, 0.8}).empty());
  const GAResult t = run_traditional_ga(g, Strategy{25, 0.8}, small_config());
  EXPECT_NEAR(t.cost.total, o.cost.total, 1e-9);
}

TEST(GaSolver, ElitismKeepsBestNonIncreasing) {
  const Instance inst = generate_instance(3, Layout::scenario2, 15);
  const GAResult r = run_ga(inst, Strategy{20, 0.8}, small_config(30, 1000));
  ASSERT_EQ(r.stats.best.size(), 1001u);
  ASSERT_EQ(r.stats.best_so_far.size(), 1001u);
  for (std::size_t i = 1; i < r.stats.best.size(); ++i) {
    EXPECT_LE(r.stats.best[i], r.stats.best[i - 1] + 1e-9) << i;
    EXPECT_LE(r.stats.best_so_far[i], r.stats.best_so_far[i - 1]);
    EXPECT_LE(r.stats.best[i], r.stats.mean[i] + 1e-9);
  }
  EXPECT_NEAR(r.stats.best_so_far.back(), r.cost.total, 1e-9);
  EXPECT_TRUE(check_feasibility(r.best, inst, Strategy{20, 0.8}).empty());
  EXPECT_NEAR(total_cost(r.best, inst, Strategy{20, 0.8}).total, r.cost.total, 1e-9);
  EXPECT_LE(r.stats.iterations_to_within(0.01), 1000);
}

TEST(GaSolver, SeedDeterminismAndThreadIndependence) {
  const Instance inst = generate_instance(5, Layout::scenario1, 20);
  GAConfig cfg = small_config(24, 40);
  const GAResult a = run_ga(inst, Strategy{15, 0.9}, cfg);
  const GAResult b = run_ga(inst, Strategy{15, 0.9}, cfg);
  EXPECT_EQ(a.best, b.best);
  EXPECT_EQ(a.stats.best, b.stats.best);
  cfg.threads = 4;
  const GAResult c = run_ga(inst, Strategy{15, 0.9}, cfg);
  EXPECT_EQ(a.best, c.best);
  EXPECT_EQ(a.stats.best_so_far, c.stats.best_so_far);
  cfg.threads = 1;
  cfg.baseline = true;
  const GAResult d = run_traditional_ga(inst, Strategy{15, 0.9}, cfg);
  cfg.threads = 3;
  const GAResult e = run_traditional_ga(inst, Strategy{15, 0.9}, cfg);
  EXPECT_EQ(d.best, e.best);
}

TEST(GaSolver, SolutionsCoverEveryStand) {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Instance inst = generate_instance(seed, Layout::scenario2, 25);
    for (bool baseline : {false, true}) {
      GAConfig cfg = small_config(20, 30);
      cfg.seed = seed;
      const GAResult r = baseline ? run_traditional_ga(inst, Strategy{10, 0.6}, cfg) : run_ga(inst, Strategy{10, 0.6}, cfg);
      const auto v = check_feasibility(r.best, inst, Strategy{10, 0.6});
      EXPECT_TRUE(v.empty()) << (v.empty() ? "" : v.front().message);
      std::set<int> served;
      for (const auto& route : r.best.routes) {
        for (int n : route) {
          if (inst.is_stand(n)) served.insert(n);
        }
      }
      EXPECT_EQ(served.size(), inst.flights.size());
    }
  }
}

TEST(GaSolver, RejectsBadConfig) {
  GAConfig cfg = small_config();
  cfg.population_size = 1;
  EXPECT_THROW(run_ga(fixtures::golden(), Strategy{25, 0.8}, cfg), DomainError);
  cfg = small_config();
  cfg.generation_gap = 1.5;
  EXPECT_THROW(run_ga(fixtures::golden(), Strategy{25, 0.8}, cfg), DomainError);
}
