#include "tin/scm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tin {

LinearScm::LinearScm(Dag dag, Eigen::MatrixXd a) : dag_(std::move(dag)), a_(std::move(a)) {
  const int n = dag_.size();
  if (a_.rows() != n || a_.cols() != n) throw std::invalid_argument("weight matrix shape mismatch");
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const bool edge = dag_.has_edge(i, j);
      if (!std::isfinite(a_(j, i))) throw std::invalid_argument("non-finite weight");
      if (edge && a_(j, i) == 0.0)
        throw std::invalid_argument("zero weight on edge " + std::to_string(i) + "->" + std::to_string(j));
      if (!edge && a_(j, i) != 0.0)
        throw std::invalid_argument("weight on non-edge " + std::to_string(i) + "->" + std::to_string(j));
    }
}

void NoiseSpec::validate() const {
  if (!(exp_low > 0.0) || !(exp_high >= exp_low))
    throw std::invalid_argument("noise exponent range must satisfy 0 < low <= high");
}

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "powered_uniform") return NoiseFamily::powered_uniform;
  if (name == "powered_gaussian") return NoiseFamily::powered_gaussian;
  if (name == "gaussian") return NoiseFamily::gaussian;
  if (name == "uniform") return NoiseFamily::uniform;
  throw std::invalid_argument("unknown noise family '" + std::string(name) + "'");
}

std::string to_string(NoiseFamily f) {
  switch (f) {
    case NoiseFamily::powered_uniform: return "powered_uniform";
    case NoiseFamily::powered_gaussian: return "powered_gaussian";
    case NoiseFamily::gaussian: return "gaussian";
    case NoiseFamily::uniform: return "uniform";
  }
  return "?";
}

void MeasurementModel::validate() const {
  if (coeffs.size() != latent.size()) throw std::invalid_argument("one measurement coefficient per latent");
  for (double c : coeffs)
    if (c == 0.0 || !std::isfinite(c)) throw std::invalid_argument("measurement coefficients must be nonzero");
  if (!(nsr >= 0.0) || !std::isfinite(nsr)) throw std::invalid_argument("nsr must be non-negative");
  meas_noise.validate();
}

int Dataset::column(std::string_view name) const {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("no column named '" + std::string(name) + "'");
  return static_cast<int>(it - names.begin());
}

Dataset Dataset::select(std::span<const int> columns) const {
  Dataset out;
  out.samples.resize(samples.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out.samples.col(static_cast<Eigen::Index>(k)) = samples.col(columns[k]);
    out.names.push_back(names.at(columns[k]));
  }
  out.provenance = provenance;
  return out;
}

void Dataset::validate() const {
  if (samples.rows() < 2) throw std::invalid_argument("dataset needs at least two samples");
  if (static_cast<Eigen::Index>(names.size()) != samples.cols())
    throw std::invalid_argument("one name per column required");
  std::vector<std::string> sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate column name");
  if (!samples.allFinite()) throw std::invalid_argument("dataset contains non-finite values");
}

Eigen::MatrixXd build_mixing(const LinearScm& scm) {
  const int n = scm.size();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n, n);
  // Row j of B = e_j + sum over parents i of a(j, i) * row i.
  for (int j : scm.dag().topological_order()) {
    b(j, j) = 1.0;
    for (int i : scm.dag().parents(j)) b.row(j) += scm.weights()(j, i) * b.row(i);
  }
  return b;
}

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "chain") return GraphKind::chain;
  if (name == "fully_connected" || name == "full") return GraphKind::fully_connected;
  if (name == "triangular_head_chain") return GraphKind::triangular_head_chain;
  if (name == "erdos_renyi" || name == "er") return GraphKind::erdos_renyi;
  throw std::invalid_argument("unknown graph kind '" + std::string(name) + "'");
}

std::string to_string(GraphKind k) {
  switch (k) {
    case GraphKind::chain: return "chain";
    case GraphKind::fully_connected: return "fully_connected";
    case GraphKind::triangular_head_chain: return "triangular_head_chain";
    case GraphKind::erdos_renyi: return "erdos_renyi";
  }
  return "?";
}

Dag generate_graph(GraphKind kind, int n, std::uint64_t seed, double edge_prob) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  std::vector<Edge> edges;
  switch (kind) {
    case GraphKind::chain:
      for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case GraphKind::fully_connected:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
      break;
    case GraphKind::triangular_head_chain:
      if (n < 3) throw std::invalid_argument("triangular_head_chain needs n >= 3");
      edges = {{0, 1}, {2, 1}, {0, 2}};
      for (int i = 2; i + 1 < n; ++i) edges.push_back({i, i + 1});
      break;
    case GraphKind::erdos_renyi: {
      if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw std::invalid_argument("edge probability outside [0,1]");
      Rng rng = make_rng(seed, {0x6772});
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      std::bernoulli_distribution coin(edge_prob);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (coin(rng)) edges.push_back({order[a], order[b]});
      break;
    }
  }
  return Dag(n, std::move(edges));
}

Dag fixture_graph(std::string_view name) {
  if (name == "fig2a") return generate_graph(GraphKind::chain, 5);
  if (name == "fig2b") return generate_graph(GraphKind::triangular_head_chain, 5);
  if (name == "fig2c") return generate_graph(GraphKind::fully_connected, 5);
  if (name == "fig2d") return Dag(5, {{0, 3}, {1, 3}, {2, 3}, {2, 4}, {3, 4}});
  if (name == "fig4") return Dag(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 6}, {2, 5}});
  if (name == "chain4") return generate_graph(GraphKind::chain, 4);
  if (name == "full4") return generate_graph(GraphKind::fully_connected, 4);
  if (name == "example13") return Dag(4, {{0, 3}, {0, 2}, {1, 2}});
  if (name == "v_structure") return Dag(3, {{0, 2}, {1, 2}});
  throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

std::vector<std::string> fixture_names() {
  return {"fig2a", "fig2b", "fig2c", "fig2d", "fig4", "chain4", "full4", "example13", "v_structure"};
}

LinearScm sample_weights(const Dag& dag, std::uint64_t seed, double lo, double hi) {
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("weight range must satisfy 0 < lo <= hi");
  Rng rng = make_rng(seed, {0x7765});
  std::uniform_real_distribution<double> mag(lo, hi);
  std::bernoulli_distribution sign(0.5);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dag.size(), dag.size());
  for (const Edge& e : dag.edges()) {
    double w = mag(rng);
    a(e.to, e.from) = sign(rng) ? w : -w;
  }
  return LinearScm(dag, std::move(a));
}

Eigen::MatrixXd sample_noise(const NoiseSpec& spec, int m, int p, Rng& rng) {
  spec.validate();
  Eigen::MatrixXd out(m, p);
  std::uniform_real_distribution<double> expo(spec.exp_low, spec.exp_high);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int j = 0; j < p; ++j) {
    const double c = expo(rng);
    for (int i = 0; i < m; ++i) {
      double x = 0.0;
      switch (spec.family) {
        case NoiseFamily::powered_uniform: x = std::pow(unif(rng), c); break;
        case NoiseFamily::powered_gaussian: {
          double g = gauss(rng);
          x = std::copysign(std::pow(std::abs(g), c), g);
          break;
        }
        case NoiseFamily::gaussian: x = gauss(rng); break;
        case NoiseFamily::uniform: x = unif(rng); break;
      }
      out(i, j) = x;
    }
    out.col(j).array() -= out.col(j).mean();
  }
  return out;
}

std::vector<Indicator> single_indicators(const Eigen::VectorXd& coeffs) {
  std::vector<Indicator> out;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) out.push_back({static_cast<int>(i), coeffs(i)});
  return out;
}

SimulatedData sample_indicators(const LinearScm& latent, std::span<const Indicator> indicators,
                                double nsr, const NoiseSpec& meas_noise, int m,
                                const NoiseSpec& latent_noise, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("sample size must be at least 2");
  if (!(nsr >= 0.0)) throw std::invalid_argument("nsr must be non-negative");
  const int n = latent.size();
  Rng lat_rng = make_rng(seed, {1});
  Rng meas_rng = make_rng(seed, {2});
  Eigen::MatrixXd e = sample_noise(latent_noise, m, n, lat_rng);
  Eigen::MatrixXd x = e * build_mixing(latent).transpose();

  const int k = static_cast<int>(indicators.size());
  Eigen::MatrixXd noise = sample_noise(meas_noise, m, k, meas_rng);
  Eigen::MatrixXd obs(m, k);
  for (int j = 0; j < k; ++j) {
    const Indicator& ind = indicators[j];
    if (ind.latent < 0 || ind.latent >= n) throw std::invalid_argument("indicator of unknown latent");
    Eigen::VectorXd col = ind.loading * x.col(ind.latent);
    const double signal_var = x.col(ind.latent).squaredNorm() / m;
    const double noise_var = noise.col(j).squaredNorm() / m;
    if (nsr > 0.0 && noise_var > 0.0) col += noise.col(j) * std::sqrt(nsr * signal_var / noise_var);
    obs.col(j) = col;
  }

  SimulatedData out;
  out.latent.samples = std::move(x);
  out.observed.samples = std::move(obs);
  for (int i = 0; i < n; ++i) out.latent.names.push_back("L" + std::to_string(i + 1));
  std::vector<int> seen(n, 0);
  std::vector<int> total(n, 0);
  for (const auto& ind : indicators) ++total[ind.latent];
  for (const auto& ind : indicators) {
    int r = ++seen[ind.latent];
    std::string name = "X" + std::to_string(ind.latent + 1);
    if (total[ind.latent] > 1) name += "_" + std::to_string(r);
    out.observed.names.push_back(name);
  }
  out.latent.provenance = out.observed.provenance = "seed=" + std::to_string(seed);
  return out;
}

SimulatedData sample_dataset(const MeasurementModel& model, int m, const NoiseSpec& latent_noise,
                             std::uint64_t seed) {
  model.validate();
  auto inds = single_indicators(model.coeffs);
  return sample_indicators(model.latent, inds, model.nsr, model.meas_noise, m, latent_noise, seed);
}

LinearScm attach_indicators(const LinearScm& latent, std::span<const Indicator> indicators) {
  const int n = latent.size();
  const int total = n + static_cast<int>(indicators.size());
  std::vector<Edge> edges = latent.dag().edges();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(total, total);
  a.topLeftCorner(n, n) = latent.weights();
  for (std::size_t k = 0; k < indicators.size(); ++k) {
    const auto& ind = indicators[k];
    if (ind.latent < 0 || ind.latent >= n) throw std::invalid_argument("indicator of unknown latent");
    if (ind.loading == 0.0) throw std::invalid_argument("indicator loading must be nonzero");
    const int v = n + static_cast<int>(k);
    edges.push_back({ind.latent, v});
    a(v, ind.latent) = ind.loading;
  }
  return LinearScm(Dag(total, std::move(edges)), std::move(a));
}

LinearScm extend_with_measurement(const MeasurementModel& model) {
  model.validate();
  auto inds = single_indicators(model.coeffs);
  return attach_indicators(model.latent, inds);
}

}  // namespace tin
