#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace evtow;

namespace {

TurnaroundTemplate chain(int transit_cap) {
  TurnaroundTemplate t;
  t.towing_activity = "B";
  t.activities = {{"A", false, {{0, std::nullopt, 2, 4}}},
                  {"B", false, {{0, std::nullopt, 3, 5}}},
                  {"C", false, {{0, transit_cap, 1, 2}}}};
  t.precedence = {{"A", "B"}, {"B", "C"}};
  return t;
}

// Brute-force search over integer event times with interval forward checking.
class GridSearch {
 public:
  GridSearch(const Stn& stn, int lo, int hi) : stn_(stn), lo_(lo), hi_(hi) {}

  bool feasible_with(int var, int value) {
    std::vector<std::pair<int, int>> dom(stn_.size(), {lo_, hi_});
    dom[0] = {0, 0};
    if (value < dom[var].first || value > dom[var].second) return false;
    dom[var] = {value, value};
    std::vector<int> x(stn_.size(), 0);
    return search(0, dom, x);
  }

  bool any() {
    std::vector<std::pair<int, int>> dom(stn_.size(), {lo_, hi_});
    dom[0] = {0, 0};
    std::vector<int> x(stn_.size(), 0);
    return search(0, dom, x);
  }

 private:
  bool search(int i, std::vector<std::pair<int, int>>& dom, std::vector<int>& x) {
    if (i == stn_.size()) {
      for (const auto& c : stn_.constraints) {
        if (x[c.to] - x[c.from] > c.bound) return false;
      }
      return true;
    }
    for (int v = dom[i].first; v <= dom[i].second; ++v) {
      x[i] = v;
      auto next = dom;
      bool ok = true;
      for (const auto& c : stn_.constraints) {
        // x[to] - x[from] <= bound, with either end now fixed
        if (c.from == i && c.to > i) next[c.to].second = std::min<int>(next[c.to].second, v + static_cast<int>(c.bound));
        if (c.to == i && c.from > i) next[c.from].first = std::max<int>(next[c.from].first, v - static_cast<int>(c.bound));
        if (c.from <= i && c.to <= i && x[c.to] - x[c.from] > c.bound) ok = false;
      }
      for (int j = i + 1; ok && j < stn_.size(); ++j) ok = next[j].first <= next[j].second;
      if (ok && search(i + 1, next, x)) return true;
    }
    return false;
  }

  const Stn& stn_;
  int lo_;
  int hi_;
};

TurnaroundTemplate random_template(std::mt19937_64& gen) {
  auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(gen); };
  TurnaroundTemplate t;
  const int n = pick(1, 5);
  for (int i = 0; i < n; ++i) {
    Activity a;
    a.name = "a" + std::to_string(i);
    a.anchored = i == 0 && pick(0, 2) == 0;
    const int mn = pick(0, 3);
    const int mx = mn + pick(0, 3);
    if (pick(0, 3) == 0) {
      // two bands split at a random transit
      const int cut = pick(5, 10);
      a.bands = {{0, cut, mn, mx}, {cut, std::nullopt, mn + 1, mx + 2}};
    } else {
      a.bands = {{0, std::nullopt, mn, mx}};
    }
    t.activities.push_back(a);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (pick(0, 2) == 0) t.precedence.emplace_back(t.activities[i].name, t.activities[j].name);
    }
  }
  t.towing_activity = t.activities[pick(0, n - 1)].name;
  return t;
}

}  // namespace

TEST(TemporalWindows, SingleAnchoredActivity) {
  TurnaroundTemplate t;
  t.towing_activity = "guide";
  t.activities = {{"guide", true, {{0, std::nullopt, 5, 10}}}};
  const Stn stn = build_stn(60, t);
  EXPECT_EQ(stn.size(), 2);
  EXPECT_EQ(stn.constraints.size(), 3u);
  const auto m = minimize_stn(stn);
  ASSERT_TRUE(m.consistent);
  EXPECT_EQ(m.lower(0, 1), 5);
  EXPECT_EQ(m.upper(0, 1), 10);
}

TEST(TemporalWindows, ChainBoundsByHand) {
  const Stn stn = build_stn(20, chain(100));
  EXPECT_EQ(stn.size(), 7);
  EXPECT_EQ(stn.constraints.size(), 10u);
  const auto m = minimize_stn(stn);
  ASSERT_TRUE(m.consistent);
  const int b = stn.start_of.at("B");
  // B starts after A (>= 2) and must leave room for B (>= 3) and C (>= 1) before 20
  EXPECT_EQ(m.lower(0, b), 2);
  EXPECT_EQ(m.upper(0, b), 16);
  const TowingWindow w = towing_window(stn, m, 600, "B");
  EXPECT_DOUBLE_EQ(w.earliest, 602);
  EXPECT_DOUBLE_EQ(w.latest, 616);
}

TEST(TemporalWindows, BandsSwitchWithTransit) {
  const Stn short_stn = build_stn(20, chain(30));
  const Stn long_stn = build_stn(40, chain(30));
  EXPECT_EQ(short_stn.start_of.count("C"), 1u);
  EXPECT_EQ(long_stn.start_of.count("C"), 0u);
  EXPECT_EQ(long_stn.size(), 5);
}

TEST(TemporalWindows, TooShortTransitGivesWitnessCycle) {
  const Stn stn = build_stn(5, chain(100));
  const auto m = minimize_stn(stn);
  EXPECT_FALSE(m.consistent);
  ASSERT_FALSE(m.witness_cycle.empty());
  std::int64_t total = 0;
  const auto& cyc = m.witness_cycle;
  for (std::size_t k = 0; k < cyc.size(); ++k) {
    const int from = cyc[k];
    const int to = cyc[(k + 1) % cyc.size()];
    std::int64_t best = kStnInfinity;
    for (const auto& c : stn.constraints) {
      if (c.from == from && c.to == to) best = std::min(best, c.bound);
    }
    ASSERT_LT(best, kStnInfinity) << "witness uses a missing edge";
    total += best;
  }
  EXPECT_LT(total, 0);
  EXPECT_THROW(derive_towing_window(600, 605, chain(100)), InfeasibleError);
}

TEST(TemporalWindows, RejectsBadTemplates) {
  TurnaroundTemplate t = chain(100);
  t.precedence.emplace_back("C", "A");
  EXPECT_TRUE(t.has_cycle());
  EXPECT_THROW(build_stn(30, t), StructuralError);
  EXPECT_THROW(build_stn(0, chain(100)), DomainError);
  TurnaroundTemplate u = chain(100);
  u.activities[0].bands[0].min_duration = 9;
  EXPECT_FALSE(u.validate().empty());
}

TEST(TemporalWindows, DefaultTemplate) {
  const auto t = default_turnaround_template();
  EXPECT_TRUE(t.validate().empty());
  EXPECT_EQ(t, load_template(fixtures::data_path("turnaround_template.json")));
  const TowingWindow w = derive_towing_window(600, 660, t);
  EXPECT_DOUBLE_EQ(w.earliest, 605);
  EXPECT_DOUBLE_EQ(w.latest, 635);
  const TowingWindow wl = derive_towing_window(600, 720, t);
  EXPECT_LE(wl.earliest, wl.latest);
  EXPECT_GE(wl.earliest, 605);
  EXPECT_THROW(derive_towing_window(600, 620, t), InfeasibleError);
}

TEST(TemporalWindows, BoundsMatchGridEnumeration) {
  std::mt19937_64 gen(2024);
  int consistent = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const TurnaroundTemplate t = random_template(gen);
    const int transit = std::uniform_int_distribution<int>(2, 12)(gen);
    const Stn stn = build_stn(transit, t);
    const auto m = minimize_stn(stn);
    GridSearch grid(stn, -2, transit + 2);
    ASSERT_EQ(m.consistent, grid.any()) << "trial " << trial;
    if (!m.consistent) continue;
    ++consistent;
    for (int v = 1; v < stn.size(); ++v) {
      int lo = 1000;
      int hi = -1000;
      for (int x = -2; x <= transit + 2; ++x) {
        if (grid.feasible_with(v, x)) {
          lo = std::min(lo, x);
          hi = std::max(hi, x);
        }
      }
      EXPECT_EQ(m.lower(0, v), lo) << "trial " << trial << " var " << stn.variables[v];
      EXPECT_EQ(m.upper(0, v), hi) << "trial " << trial << " var " << stn.variables[v];
    }
  }
  EXPECT_GT(consistent, 10);
}
