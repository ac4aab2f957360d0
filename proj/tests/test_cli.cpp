#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "cli_app.hpp"
#include "test_support.hpp"

using namespace evtow;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "evtow");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("evtow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string at(const std::string& name) const { return (dir_ / name).string(); }
  std::string dir() const { return dir_.string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, ForecastWritesValuesAndManifest) {
  const RunResult r = run({"--out-dir", dir(), "forecast"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("T2 mid 129.2"), std::string::npos);
  const Json j = Json::parse(detail::read_file(at("forecast.json")));
  EXPECT_NEAR(j["t1_short"].get<double>(), 132.0757, 1e-3);
  EXPECT_EQ(j["scenario_sizes"], Json::parse("[130, 80, 150, 130]"));
  const Json m = Json::parse(detail::read_file(at("manifest.json")));
  EXPECT_EQ(m["tool"], "evtow");
  EXPECT_EQ(m["verb"], "forecast");
  EXPECT_TRUE(m["instance_hash"].is_null());
  EXPECT_EQ(m["outputs"], Json::parse(R"(["forecast.json"])"));
}

TEST_F(CliTest, SolveGolden) {
  const RunResult r = run({"--out-dir", dir(), "--quiet", "solve", "--instance", fixtures::data_path("golden_two_flight.json"),
                           "--population", "10", "--iterations", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(detail::read_file(at("solution.txt")), routes_to_text({{0, 1, 2, 0}}));
  const Json cost = Json::parse(detail::read_file(at("cost.json")));
  const double expect = total_cost({{{0, 1, 2, 0}}}, fixtures::golden(), Strategy{25, 0.8}).total;
  EXPECT_NEAR(cost["cost"]["total"].get<double>(), expect, 1e-9);
  EXPECT_EQ(cost["required_tractors"], 1);
  const Json m = Json::parse(detail::read_file(at("manifest.json")));
  EXPECT_EQ(m["verb"], "solve");
  EXPECT_EQ(m["seed"], 1);
  EXPECT_EQ(m["instance_hash"], cli::instance_hash(fixtures::golden()));
  EXPECT_EQ(m["config"]["population_size"], 10);
  EXPECT_EQ(m["config"]["max_iterations"], 10);
  EXPECT_FALSE(m.contains("threads"));
  for (const char* f : {"solution.txt", "cost.json", "stats.csv", "trace.csv"}) EXPECT_TRUE(fs::exists(at(f))) << f;
}

TEST_F(CliTest, EvaluateGivenSolution) {
  detail::write_file(at("routes.txt"), "0 1 0\n0 2 0\n");
  const RunResult r = run({"--out-dir", dir(), "evaluate", "--instance", fixtures::data_path("golden_two_flight.json"),
                           "--solution", at("routes.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json cost = Json::parse(detail::read_file(at("cost.json")));
  EXPECT_DOUBLE_EQ(cost["cost"]["fixed"].get<double>(), 100);
  EXPECT_EQ(cost["required_tractors"], 2);
  detail::write_file(at("bad.txt"), "0 1 0\n");
  const RunResult bad = run({"--out-dir", dir(), "evaluate", "--instance", fixtures::data_path("golden_two_flight.json"),
                             "--solution", at("bad.txt")});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("\"structure\""), std::string::npos);
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"--out-dir", dir(), "solve"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--out-dir", dir(), "solve", "--instance", at("missing.json")}).code, 2);
  EXPECT_EQ(run({"--out-dir", dir(), "forecast", "--rates", "1,2"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, DomainAndInputErrorsExitOne) {
  const RunResult r = run({"--out-dir", dir(), "solve", "--instance", fixtures::data_path("golden_two_flight.json"),
                           "--speed", "40"});
  EXPECT_EQ(r.code, 1);
  const Json e = Json::parse(r.err);
  EXPECT_EQ(e["error"], "domain");
  detail::write_file(at("broken.json"), "{");
  const RunResult p = run({"--out-dir", dir(), "solve", "--instance", at("broken.json")});
  EXPECT_EQ(p.code, 1);
  EXPECT_EQ(Json::parse(p.err)["error"], "input");
}

TEST_F(CliTest, WindowsFromTemplate) {
  const RunResult ok = run({"--out-dir", dir(), "windows", "--arrival", "600", "--departure", "660"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("605"), std::string::npos);
  EXPECT_NE(ok.out.find("635"), std::string::npos);
  const RunResult bad = run({"--out-dir", dir(), "windows", "--arrival", "600", "--departure", "620"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(Json::parse(bad.err)["error"], "infeasible");
}

TEST_F(CliTest, GenerateIsDeterministicAndThreadFree) {
  ASSERT_EQ(run({"--out-dir", at("a"), "--seed", "7", "generate", "--layout", "s2", "--flights", "12"}).code, 0);
  ASSERT_EQ(run({"--out-dir", at("b"), "--seed", "7", "--threads", "3", "generate", "--layout", "s2", "--flights", "12"}).code, 0);
  EXPECT_EQ(detail::read_file(at("a/instance.json")), detail::read_file(at("b/instance.json")));
  EXPECT_EQ(detail::read_file(at("a/manifest.json")), detail::read_file(at("b/manifest.json")));

  const std::string inst = at("a/instance.json");
  for (const char* threads : {"1", "4"}) {
    const RunResult r = run({"--out-dir", at(std::string("s") + threads), "--threads", threads, "--quiet", "solve",
                             "--instance", inst, "--population", "12", "--iterations", "15"});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  for (const char* f : {"solution.txt", "cost.json", "stats.csv", "trace.csv", "manifest.json"}) {
    EXPECT_EQ(detail::read_file(at(std::string("s1/") + f)), detail::read_file(at(std::string("s4/") + f))) << f;
  }
}

TEST_F(CliTest, ConfigFileOverridesDefaults) {
  detail::write_file(at("cfg.json"), R"({"population_size": 8, "max_iterations": 5, "energy_model": "traditional"})");
  const RunResult r = run({"--out-dir", dir(), "--config", at("cfg.json"), "--quiet", "solve", "--instance",
                           fixtures::data_path("golden_two_flight.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json m = Json::parse(detail::read_file(at("manifest.json")));
  EXPECT_EQ(m["config"]["population_size"], 8);
  EXPECT_EQ(m["config"]["energy_model"], "traditional");
  detail::write_file(at("bad.json"), R"({"population": 8})");
  const RunResult bad = run({"--out-dir", dir(), "--config", at("bad.json"), "solve", "--instance",
                             fixtures::data_path("golden_two_flight.json")});
  EXPECT_EQ(bad.code, 1);
}

TEST_F(CliTest, ChargeCurveAndFig1) {
  ASSERT_EQ(run({"--out-dir", dir(), "--quiet", "charge-curve"}).code, 0);
  const std::string times = detail::read_file(at("charge_times.csv"));
  EXPECT_NE(times.find("36.0"), std::string::npos);
  ASSERT_EQ(run({"--out-dir", dir(), "--quiet", "fig1"}).code, 0);
  const std::string fig = detail::read_file(at("fig1.csv"));
  EXPECT_GT(std::count(fig.begin(), fig.end(), '\n'), 100);
}
