#include <algorithm>
#include <cmath>
#include <sstream>

#include "tin/discovery.hpp"
#include "tin/error.hpp"
#include "tin/linalg.hpp"
#include "tin/oracle.hpp"

namespace tin {
namespace {

Eigen::MatrixXd pick(const Eigen::MatrixXd& data, std::span<const int> cols) {
  Eigen::MatrixXd out(data.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= data.cols()) throw std::out_of_range("column index out of range");
    out.col(static_cast<Eigen::Index>(j)) = data.col(cols[j]);
  }
  return out;
}

}  // namespace

DataGinTester::DataGinTester(Eigen::MatrixXd data, EstimatorParams params)
    : data_(std::move(data)), params_(std::move(params)) {
  params_.validate();
}

GinOutcome DataGinTester::test(std::span<const int> z, std::span<const int> y) const {
  if (y.empty()) throw std::invalid_argument("gin test needs a non-empty y");
  GinOutcome out;
  const Eigen::MatrixXd yc = center_columns(pick(data_, y));
  if (z.empty()) {
    out.omega = Eigen::VectorXd::Unit(yc.cols(), 0);
    out.holds = true;
    out.score = 1.0;
    return out;
  }
  const Eigen::MatrixXd zc = center_columns(pick(data_, z));
  const Eigen::MatrixXd cov = zc.transpose() * yc / static_cast<double>(zc.rows());
  out.omega = ascending_svd(cov).v.col(0);
  HsicResult h = HsicReference(zc, params_).test(yc * out.omega);
  out.score = h.p_value;
  out.holds = h.p_value > params_.alpha;
  return out;
}

OracleGinTester::OracleGinTester(const LinearScm& latent, std::vector<Indicator> indicators)
    : n_latent_(latent.size()), indicators_(std::move(indicators)),
      extended_(attach_indicators(latent, indicators_)) {}

GinOutcome OracleGinTester::test(std::span<const int> z, std::span<const int> y) const {
  std::vector<int> zv, yv;
  for (int c : z) zv.push_back(n_latent_ + c);
  for (int c : y) yv.push_back(n_latent_ + c);
  const VertexSet zs(zv), ys(yv);
  GinOutcome out;
  out.holds = gin_oracle(extended_, zs, ys);
  out.score = out.holds ? 1.0 : 0.0;
  TinResult t = tin_oracle(extended_, zs, ys);
  // The basis is indexed by sorted vertex id; report it in the caller's column order.
  out.omega = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(yv.size()));
  if (t.omega_dim > 0)
    for (std::size_t k = 0; k < yv.size(); ++k) {
      const auto pos = std::lower_bound(ys.begin(), ys.end(), yv[k]) - ys.begin();
      out.omega(static_cast<Eigen::Index>(k)) = t.omega_basis(pos, 0);
    }
  return out;
}

LearnedStructure two_measurement_learn(const GinTester& gin, std::span<const MeasurementPair> pairing,
                                       double parent_threshold) {
  const int n = static_cast<int>(pairing.size());
  if (n == 0) throw std::invalid_argument("empty pairing");
  std::vector<int> seen(gin.columns(), 0);
  for (const auto& p : pairing) {
    for (int c : {p.first, p.second}) {
      if (c < 0 || c >= gin.columns()) throw std::invalid_argument("pairing mentions unknown column");
      if (seen[c]++) throw std::invalid_argument("column used by two pairs");
    }
  }
  std::vector<int> first_half;
  for (const auto& p : pairing) first_half.push_back(p.first);

  LearnedStructure out;
  nlohmann::json steps = nlohmann::json::array();
  std::vector<int> order, remaining(n);
  for (int i = 0; i < n; ++i) remaining[i] = i;
  while (remaining.size() > 1) {
    int best = -1;
    double best_score = -1.0;
    bool best_holds = false;
    for (int j : remaining) {
      std::vector<int> z;
      for (int i : order) z.push_back(pairing[i].second);
      z.push_back(pairing[j].second);
      GinOutcome g = gin.test(z, first_half);
      if (g.score > best_score) {
        best = j;
        best_score = g.score;
        best_holds = g.holds;
      }
    }
    steps.push_back({{"picked", best}, {"score", best_score}});
    if (!best_holds)
      throw MethodError("no remaining latent passes the ordering test", {{"partial_order", order}, {"steps", steps}});
    order.push_back(best);
    remaining.erase(std::find(remaining.begin(), remaining.end(), best));
  }
  order.push_back(remaining.front());

  std::vector<Edge> edges;
  nlohmann::json omegas = nlohmann::json::array();
  for (std::size_t pos = 1; pos < order.size(); ++pos) {
    const int j = order[pos];
    std::vector<int> z, y;
    for (std::size_t a = 0; a < pos; ++a) {
      z.push_back(pairing[order[a]].first);
      y.push_back(pairing[order[a]].second);
    }
    y.push_back(pairing[j].second);
    GinOutcome g = gin.test(z, y);
    Eigen::VectorXd w = g.omega;
    const double pivot = w(w.size() - 1);
    if (std::abs(pivot) < 1e-12)
      throw MethodError("GIN solution has no weight on the target measurement", {{"vertex", j}});
    w /= -pivot;
    omegas.push_back({{"vertex", j}, {"omega", std::vector<double>(w.data(), w.data() + w.size())}});
    for (std::size_t a = 0; a < pos; ++a)
      if (std::abs(w(static_cast<Eigen::Index>(a))) > parent_threshold) edges.push_back({order[a], j});
  }
  out.dag = Dag(n, std::move(edges));
  out.order = std::move(order);
  out.diagnostics["ordering_steps"] = steps;
  out.diagnostics["parent_solutions"] = omegas;
  return out;
}

LearnedStructure two_measurement_learn(const Dataset& data, std::span<const MeasurementPair> pairing,
                                       const EstimatorParams& params, double parent_threshold) {
  data.validate();
  return two_measurement_learn(DataGinTester(data.samples, params), pairing, parent_threshold);
}

std::vector<MeasurementPair> cluster_measurement_pairs(const GinTester& gin) {
  const int cols = gin.columns();
  if (cols % 2 != 0) throw std::invalid_argument("need an even number of measured columns");
  std::vector<MeasurementPair> passing;
  for (int a = 0; a < cols; ++a)
    for (int b = a + 1; b < cols; ++b) {
      std::vector<int> z;
      for (int c = 0; c < cols; ++c)
        if (c != a && c != b) z.push_back(c);
      std::vector<int> y{a, b};
      if (gin.test(z, y).holds) passing.push_back({a, b});
    }
  std::vector<int> uses(cols, 0);
  for (const auto& p : passing) {
    ++uses[p.first];
    ++uses[p.second];
  }
  nlohmann::json bad = nlohmann::json::array();
  for (int c = 0; c < cols; ++c)
    if (uses[c] != 1) bad.push_back({{"column", c}, {"passing_pairs", uses[c]}});
  if (!bad.empty()) {
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& p : passing) pairs.push_back({p.first, p.second});
    throw MethodError("passing pairs do not form a perfect matching", {{"ambiguous", bad}, {"passing", pairs}});
  }
  return passing;
}

std::vector<MeasurementPair> parse_pairing(std::string_view text, const std::vector<std::string>& names) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<MeasurementPair> out;
  int lineno = 0;
  auto index_of = [&](const std::string& name, int ln) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw DataError("pairing line " + std::to_string(ln) + ": unknown column '" + name + "'");
    return static_cast<int>(it - names.begin());
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra))
      throw DataError("pairing line " + std::to_string(lineno) + ": expected two column names");
    out.push_back({index_of(a, lineno), index_of(b, lineno)});
  }
  return out;
}

}  // namespace tin
