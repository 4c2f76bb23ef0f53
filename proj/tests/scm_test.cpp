#include <gtest/gtest.h>

#include <random>

#include "brute.hpp"
#include "tin/random.hpp"
#include "tin/scm.hpp"

using tin::Dag;
using tin::LinearScm;

namespace {

// Sum over directed paths of the product of edge weights.
double path_sum(const LinearScm& scm, int from, int to) {
  if (from == to) return 1.0;
  double total = 0.0;
  for (int c : scm.dag().children(from)) total += scm.weight(from, c) * path_sum(scm, c, to);
  return total;
}

double variance(const Eigen::VectorXd& v) { return (v.array() - v.mean()).square().mean(); }

tin::MeasurementModel model_for(const Dag& g, double nsr, std::uint64_t seed) {
  tin::MeasurementModel m;
  m.latent = tin::sample_weights(g, seed);
  m.coeffs = Eigen::VectorXd::Ones(g.size());
  m.nsr = nsr;
  return m;
}

}  // namespace

TEST(Mixing, ChainMatchesClosedForm) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(5, 5);
  const double w[4] = {0.6, -0.7, 0.8, 0.55};
  for (int i = 0; i < 4; ++i) a(i + 1, i) = w[i];
  const LinearScm scm(tin::generate_graph(tin::GraphKind::chain, 5), a);
  const Eigen::MatrixXd b = tin::build_mixing(scm);
  EXPECT_NEAR(b(4, 0), w[0] * w[1] * w[2] * w[3], 1e-15);
  EXPECT_NEAR(b(3, 1), w[1] * w[2], 1e-15);
  EXPECT_EQ(b(0, 4), 0.0);
}

TEST(Mixing, EdgelessIsIdentity) {
  const LinearScm scm(Dag(4, {}), Eigen::MatrixXd::Zero(4, 4));
  EXPECT_EQ(tin::build_mixing(scm), Eigen::MatrixXd::Identity(4, 4));
}

TEST(Mixing, MatchesPathSums) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 50; ++t) {
    const LinearScm scm = tin::sample_weights(brute::random_dag(4, 0.6, rng), t);
    const Eigen::MatrixXd b = tin::build_mixing(scm);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(b(j, i), path_sum(scm, i, j), 1e-12);
    EXPECT_TRUE(b.isApprox(brute::mixing(scm), 1e-12));
  }
}

TEST(LinearScm, RejectsWeightsOffTheGraph) {
  const Dag g(2, {{0, 1}});
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
  EXPECT_THROW(LinearScm(g, a), std::invalid_argument);
  a(1, 0) = 0.5;
  a(0, 1) = 0.5;
  EXPECT_THROW(LinearScm(g, a), std::invalid_argument);
}

TEST(GenerateGraph, Kinds) {
  const Dag chain = tin::generate_graph(tin::GraphKind::chain, 5);
  EXPECT_EQ(chain.edges().size(), 4u);
  for (int i = 0; i < 4; ++i) EXPECT_TRUE(chain.has_edge(i, i + 1));
  const Dag full = tin::generate_graph(tin::GraphKind::fully_connected, 4);
  EXPECT_EQ(full.edges().size(), 6u);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) EXPECT_TRUE(full.has_edge(i, j));
  const Dag tri = tin::generate_graph(tin::GraphKind::triangular_head_chain, 5);
  EXPECT_EQ(tri.edges().size(), 5u);
  for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {2, 1}, {2, 3}, {3, 4}}) EXPECT_TRUE(tri.has_edge(a, b));
  const Dag er1 = tin::generate_graph(tin::GraphKind::erdos_renyi, 8, 5, 0.4);
  EXPECT_EQ(er1.edges(), tin::generate_graph(tin::GraphKind::erdos_renyi, 8, 5, 0.4).edges());
}

TEST(SampleWeights, RangeSignAndDeterminism) {
  const Dag g = tin::generate_graph(tin::GraphKind::fully_connected, 6);
  const LinearScm a = tin::sample_weights(g, 42);
  EXPECT_EQ(a.weights(), tin::sample_weights(g, 42).weights());
  EXPECT_NE(a.weights(), tin::sample_weights(g, 43).weights());
  bool pos = false, neg = false;
  for (const auto& e : g.edges()) {
    const double w = a.weight(e.from, e.to);
    EXPECT_GE(std::abs(w), 0.5);
    EXPECT_LE(std::abs(w), 0.9);
    (w > 0 ? pos : neg) = true;
  }
  EXPECT_TRUE(pos && neg);
  EXPECT_EQ(tin::sample_weights(Dag(3, {}), 1).weights(), Eigen::MatrixXd::Zero(3, 3));
}

TEST(SampleDataset, NoiseToSignalRatio) {
  const auto model = model_for(tin::generate_graph(tin::GraphKind::chain, 4), 1.0, 3);
  const auto data = tin::sample_dataset(model, 5000, tin::NoiseSpec::latent_default(), 9);
  for (int i = 0; i < 4; ++i) {
    const Eigen::VectorXd e = data.observed.samples.col(i) - data.latent.samples.col(i);
    const double r = variance(e) / variance(data.latent.samples.col(i));
    EXPECT_GE(r, 0.99);
    EXPECT_LE(r, 1.01);
  }
}

TEST(SampleDataset, LatentNoiseIsHeavyTailed) {
  tin::Rng rng(5);
  const Eigen::MatrixXd e = tin::sample_noise(tin::NoiseSpec::latent_default(), 20000, 3, rng);
  for (int j = 0; j < 3; ++j) {
    const Eigen::ArrayXd c = e.col(j).array() - e.col(j).mean();
    const double kurt = c.pow(4).mean() / std::pow(c.square().mean(), 2) - 3.0;
    // U^c for c in [5, 7] has excess kurtosis between 1.71 and 3.63
    EXPECT_GT(kurt, 1.5);
    EXPECT_LT(kurt, 4.2);
    EXPECT_NEAR(e.col(j).mean(), 0.0, 1e-12);
  }
}

TEST(SampleDataset, VanishingNoiseReproducesLatents) {
  auto model = model_for(tin::generate_graph(tin::GraphKind::chain, 3), 0.0, 2);
  const auto data = tin::sample_dataset(model, 200, tin::NoiseSpec::latent_default(), 1);
  EXPECT_EQ(data.observed.samples, data.latent.samples);
  model.coeffs << 2.0, -1.0, 0.5;
  const auto scaled = tin::sample_dataset(model, 200, tin::NoiseSpec::latent_default(), 1);
  for (int i = 0; i < 3; ++i)
    EXPECT_TRUE(scaled.observed.samples.col(i).isApprox(model.coeffs(i) * scaled.latent.samples.col(i)));
}

TEST(SampleDataset, Deterministic) {
  const auto model = model_for(tin::fixture_graph("fig2d"), 0.5, 8);
  const auto a = tin::sample_dataset(model, 300, tin::NoiseSpec::latent_default(), 77);
  const auto b = tin::sample_dataset(model, 300, tin::NoiseSpec::latent_default(), 77);
  EXPECT_EQ(a.observed.samples, b.observed.samples);
  EXPECT_EQ(a.observed.names, (std::vector<std::string>{"X1", "X2", "X3", "X4", "X5"}));
}

TEST(ExtendWithMeasurement, ChainBlockStructure) {
  const auto model = model_for(tin::generate_graph(tin::GraphKind::chain, 3), 1.0, 4);
  const LinearScm ext = tin::extend_with_measurement(model);
  EXPECT_EQ(ext.size(), 6);
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(ext.dag().has_edge(i, 3 + i));
  const Eigen::MatrixXd b = tin::build_mixing(ext);
  const Eigen::MatrixXd bl = tin::build_mixing(model.latent);
  EXPECT_TRUE(b.topLeftCorner(3, 3).isApprox(bl));
  EXPECT_TRUE(b.bottomLeftCorner(3, 3).isApprox(bl));
  EXPECT_TRUE(b.bottomRightCorner(3, 3).isApprox(Eigen::MatrixXd::Identity(3, 3)));
  EXPECT_TRUE(b.topRightCorner(3, 3).isZero());
}

TEST(ExtendWithMeasurement, SingleVertex) {
  tin::MeasurementModel m;
  m.latent = LinearScm(Dag(1, {}), Eigen::MatrixXd::Zero(1, 1));
  m.coeffs = Eigen::VectorXd::Constant(1, 1.7);
  const Eigen::MatrixXd b = tin::build_mixing(tin::extend_with_measurement(m));
  Eigen::MatrixXd expect(2, 2);
  expect << 1, 0, 1.7, 1;
  EXPECT_TRUE(b.isApprox(expect));
}

TEST(ExtendWithMeasurement, MatchesBlockConstruction) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto model = model_for(brute::random_dag(4, 0.5, rng), 1.0, t);
    model.coeffs = Eigen::VectorXd::Random(4).array() + 2.0;
    const Eigen::MatrixXd b = brute::mixing(tin::extend_with_measurement(model));
    const Eigen::MatrixXd bl = brute::mixing(model.latent);
    EXPECT_TRUE(b.bottomLeftCorner(4, 4).isApprox(model.coeffs.asDiagonal() * bl, 1e-12));
  }
}

TEST(MeasurementModel, Validation) {
  auto m = model_for(tin::generate_graph(tin::GraphKind::chain, 3), 1.0, 1);
  m.coeffs(1) = 0.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m.coeffs(1) = 1.0;
  m.nsr = -1.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(Seeds, DerivedStreamsAreStable) {
  EXPECT_EQ(tin::derive_seed(1, {2, 3}), tin::derive_seed(1, {2, 3}));
  EXPECT_NE(tin::derive_seed(1, {2, 3}), tin::derive_seed(1, {3, 2}));
  EXPECT_NE(tin::derive_seed(1, {2}), tin::derive_seed(2, {2}));
}
