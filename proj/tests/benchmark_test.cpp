#include <gtest/gtest.h>

#include "tin/benchmark.hpp"

namespace {

tin::BenchmarkConfig tiny() {
  tin::BenchmarkConfig c;
  c.estimators = {"oracle", "two_steps"};
  c.ns = {3};
  c.nsrs = {0.5};
  c.sample_size = 600;
  c.reps = 3;
  c.seed = 9;
  return c;
}

}  // namespace

TEST(Benchmark, OracleCellsAreExactAndRepsCounted) {
  const auto report = tin::run_benchmark(tiny());
  ASSERT_EQ(report.cells.size(), 4u);
  for (const auto& c : report.cells) {
    EXPECT_EQ(c.distances.size() + c.failures.size(), 3u) << c.estimator;
    if (c.estimator == "oracle") {
      EXPECT_TRUE(c.failures.empty());
      for (double d : c.distances) EXPECT_EQ(d, 0.0);
      EXPECT_EQ(c.median, 0.0);
    }
    for (double d : c.distances) {
      EXPECT_GE(d, 0.0);
      EXPECT_LE(d, 1.0);
    }
  }
}

TEST(Benchmark, ReportIsReproducibleOutsideTiming) {
  auto cfg = tiny();
  cfg.estimators = {"oracle", "subsets"};
  auto a = tin::to_json(tin::run_benchmark(cfg));
  cfg.jobs = 1;
  auto b = tin::to_json(tin::run_benchmark(cfg));
  a.erase("timing");
  b.erase("timing");
  a["config"].erase("jobs");
  b["config"].erase("jobs");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_NE(tin::to_table(tin::run_benchmark(tiny())).find("oracle"), std::string::npos);
}

TEST(Benchmark, ConfigJsonAndValidation) {
  const auto j = nlohmann::json::parse(
      R"({"estimators": ["rank"], "graph_kinds": ["fully_connected"], "ns": [4], "nsrs": [1.0], "reps": 2})");
  const auto c = tin::benchmark_config_from_json(j);
  EXPECT_EQ(c.estimators, (std::vector<std::string>{"rank"}));
  EXPECT_EQ(c.graph_kinds, (std::vector<tin::GraphKind>{tin::GraphKind::fully_connected}));
  EXPECT_EQ(c.reps, 2);
  EXPECT_EQ(tin::to_json(tin::benchmark_config_from_json(tin::to_json(c))), tin::to_json(c));
  EXPECT_ANY_THROW(tin::benchmark_config_from_json(nlohmann::json::parse(R"({"estimators": ["nope"]})")));
  EXPECT_ANY_THROW(tin::benchmark_config_from_json(nlohmann::json::parse(R"({"repz": 1})")));
  auto bad = tiny();
  bad.ns = {};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}
