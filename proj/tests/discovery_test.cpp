#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "tin/config.hpp"
#include "tin/discovery.hpp"
#include "tin/error.hpp"

using tin::GroupOrdering;
using tin::VertexSet;

namespace {

std::vector<tin::Indicator> two_per_latent(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> load(0.6, 1.6);
  std::vector<tin::Indicator> ind;
  for (int copy = 0; copy < 2; ++copy)
    for (int i = 0; i < n; ++i) ind.push_back({i, load(rng)});
  return ind;
}

std::vector<tin::MeasurementPair> natural_pairing(int n) {
  std::vector<tin::MeasurementPair> p;
  for (int i = 0; i < n; ++i) p.push_back({i, n + i});
  return p;
}

bool respects(const tin::Dag& g, const std::vector<int>& order) {
  std::vector<int> pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
  for (const auto& e : g.edges())
    if (pos[e.from] > pos[e.to]) return false;
  return true;
}

}  // namespace

TEST(OracleOrdering, Fig4) {
  const auto scm = tin::sample_weights(tin::fixture_graph("fig4"), 1);
  EXPECT_EQ(tin::oracle_ords(scm), (std::vector<int>{1, 2, 3, 4, 4, 3, 2}));
  const GroupOrdering expect{{{0}, {1, 6}, {2, 5}, {3, 4}}};
  EXPECT_EQ(tin::oracle_group_ordering(scm), expect);
  EXPECT_EQ(tin::graph_group_decomposition(scm.dag()), expect);
}

TEST(OracleOrdering, SingleEdgeIsOneGroup) {
  const auto scm = tin::sample_weights(tin::Dag(2, {{0, 1}}), 2);
  EXPECT_EQ(tin::oracle_group_ordering(scm), (GroupOrdering{{{0, 1}}}));
}

TEST(OracleOrdering, AncestorCountRuleOnAllSmallDags) {
  for (int n = 2; n <= 5; ++n) {
    int t = 0;
    for (const auto& g : brute::all_dags(n))
      EXPECT_EQ(tin::oracle_ords(tin::sample_weights(g, ++t)), brute::one_and_others_ords(g)) << n << " " << t;
  }
}

// The ancestor-count key can separate a leaf from the group it would join as a pure leaf child.
TEST(OracleOrdering, CountKeyDiffersFromGroupDecomposition) {
  const tin::Dag g(4, {{0, 3}, {1, 2}, {2, 3}});
  const auto scm = tin::sample_weights(g, 3);
  EXPECT_EQ(tin::oracle_ords(scm), (std::vector<int>{1, 1, 2, 3}));
  EXPECT_EQ(tin::oracle_group_ordering(scm), (GroupOrdering{{{0, 1}, {2}, {3}}}));
  EXPECT_EQ(tin::graph_group_decomposition(g), (GroupOrdering{{{0, 1}, {2, 3}}}));
}

TEST(DataOrdering, ChainFromSamples) {
  int exact = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    tin::SimulationConfig cfg;
    cfg.n = 4;
    cfg.nsr = 0.5;
    cfg.sample_size = 5000;
    cfg.seed = seed;
    const auto run = tin::run_simulation(cfg);
    tin::EstimatorParams p;
    p.seed = seed;
    const auto est = tin::estimate_group_ordering(run.data.observed, "two_steps", p);
    ASSERT_EQ(est.results.size(), 4u);
    if (est.ordering == GroupOrdering{{{0}, {1}, {2, 3}}}) ++exact;
  }
  EXPECT_GE(exact, 2);
}

TEST(DataOrdering, RejectsBadInput) {
  tin::Dataset one;
  one.names = {"X1"};
  one.samples = Eigen::MatrixXd::Random(20, 1);
  EXPECT_THROW(tin::estimate_group_ordering(one, "two_steps", {}), std::invalid_argument);
  tin::Dataset two;
  two.names = {"X1", "X2"};
  two.samples = Eigen::MatrixXd::Random(20, 2);
  EXPECT_THROW(tin::estimate_group_ordering(two, "bogus", {}), std::invalid_argument);
}

TEST(TwoMeasurement, OracleRecoversRandomDags) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 3;
    const auto scm = tin::sample_weights(brute::random_dag(n, 0.5, rng), t);
    const tin::OracleGinTester gin(scm, two_per_latent(n, rng));
    const auto pairing = natural_pairing(n);
    const auto learned = tin::two_measurement_learn(gin, pairing, tin::kOracleParentThreshold);
    EXPECT_TRUE(respects(scm.dag(), learned.order));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) EXPECT_EQ(learned.dag.has_edge(a, b), scm.dag().has_edge(a, b)) << t;
  }
}

TEST(TwoMeasurement, PairingValidation) {
  const auto scm = tin::sample_weights(tin::Dag(2, {{0, 1}}), 1);
  std::mt19937_64 rng(5);
  const tin::OracleGinTester gin(scm, two_per_latent(2, rng));
  const std::vector<tin::MeasurementPair> reused{{0, 2}, {0, 3}}, unknown{{0, 7}, {1, 3}};
  EXPECT_THROW(tin::two_measurement_learn(gin, reused, 1e-3), std::invalid_argument);
  EXPECT_THROW(tin::two_measurement_learn(gin, unknown, 1e-3), std::invalid_argument);
  EXPECT_THROW(tin::two_measurement_learn(gin, std::vector<tin::MeasurementPair>{}, 1e-3), std::invalid_argument);
}

TEST(ClusterPairs, RecoversShuffledPairs) {
  std::mt19937_64 rng(6);
  const auto scm = tin::sample_weights(tin::generate_graph(tin::GraphKind::chain, 3), 7);
  auto ind = two_per_latent(3, rng);
  std::shuffle(ind.begin(), ind.end(), rng);
  const auto pairs = tin::cluster_measurement_pairs(tin::OracleGinTester(scm, ind));
  ASSERT_EQ(pairs.size(), 3u);
  for (const auto& p : pairs) EXPECT_EQ(ind[p.first].latent, ind[p.second].latent);
}

TEST(ClusterPairs, SingleLatentAndOddColumns) {
  const auto scm = tin::sample_weights(tin::Dag(1, {}), 1);
  const std::vector<tin::Indicator> two{{0, 1.0}, {0, 0.7}}, three{{0, 1.0}, {0, 0.7}, {0, 1.2}};
  EXPECT_EQ(tin::cluster_measurement_pairs(tin::OracleGinTester(scm, two)),
            (std::vector<tin::MeasurementPair>{{0, 1}}));
  EXPECT_THROW(tin::cluster_measurement_pairs(tin::OracleGinTester(scm, three)), std::invalid_argument);
}

TEST(ClusterPairs, FailsWithoutPerfectMatching) {
  // Three indicators of one latent plus one of another: every pair of the triple passes.
  const auto scm = tin::sample_weights(tin::Dag(2, {{0, 1}}), 2);
  const std::vector<tin::Indicator> ind{{0, 1.0}, {0, 0.8}, {0, 1.3}, {1, 1.0}};
  EXPECT_THROW(tin::cluster_measurement_pairs(tin::OracleGinTester(scm, ind)), tin::MethodError);
}

TEST(DataGin, SeparatesRightAndWrongPairs) {
  std::mt19937_64 rng(8);
  const auto scm = tin::sample_weights(tin::Dag(2, {{0, 1}}), 3);
  const auto ind = two_per_latent(2, rng);
  const auto sim = tin::sample_indicators(scm, ind, 0.2, tin::NoiseSpec::measurement_default(), 10000,
                                          tin::NoiseSpec::latent_default(), 9);
  const tin::DataGinTester gin(sim.observed.samples, {});
  const std::vector<int> z_right{1, 3}, y_right{0, 2}, z_wrong{2, 3}, y_wrong{0, 1};
  EXPECT_TRUE(gin.test(z_right, y_right).holds);
  EXPECT_FALSE(gin.test(z_wrong, y_wrong).holds);
}

TEST(ParsePairing, NamesCommentsAndErrors) {
  const std::vector<std::string> names{"a1", "b1", "a2", "b2"};
  EXPECT_EQ(tin::parse_pairing("a1 a2  # first\n\nb1 b2\n", names),
            (std::vector<tin::MeasurementPair>{{0, 2}, {1, 3}}));
  EXPECT_THROW(tin::parse_pairing("a1\n", names), tin::DataError);
  EXPECT_THROW(tin::parse_pairing("a1 a2 b1\n", names), tin::DataError);
  EXPECT_THROW(tin::parse_pairing("a1 zz\n", names), tin::DataError);
}
