#include "tin/oracle.hpp"

#include <cmath>

#include "tin/linalg.hpp"
#include "tin/random.hpp"

namespace tin {
namespace {

void check_in_graph(const LinearScm& scm, const VertexSet& s, const char* what) {
  if (!s.empty() && s.ids().back() >= scm.size())
    throw std::out_of_range(std::string(what) + " mentions vertex outside the graph");
}

Eigen::MatrixXd rows_of(const Eigen::MatrixXd& b, const VertexSet& rows) {
  std::vector<int> all(static_cast<std::size_t>(b.cols()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return submatrix(b, rows.ids(), all);
}

}  // namespace

Eigen::VectorXd NoiseCumulants::order(int k) const {
  if (k < 2 || k > k_max()) throw std::out_of_range("cumulant order not available");
  return values.col(k - 2);
}

NoiseCumulants generic_noise_cumulants(int n, int k_max, std::uint64_t seed) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  Rng rng = make_rng(seed, {0x63756d});
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution sign(0.5);
  NoiseCumulants nc{Eigen::MatrixXd(n, k_max - 1)};
  for (int j = 0; j < k_max - 1; ++j)
    for (int i = 0; i < n; ++i) {
      double v = mag(rng);
      nc.values(i, j) = (j > 0 && sign(rng)) ? -v : v;
    }
  return nc;
}

TinResult tin_oracle(const LinearScm& scm, const VertexSet& z, const VertexSet& y) {
  check_in_graph(scm, z, "z");
  check_in_graph(scm, y, "y");
  const Eigen::MatrixXd b = build_mixing(scm);
  const VertexSet anc = ancestors(scm.dag(), z);
  const Eigen::MatrixXd m = submatrix(b, y.ids(), anc.ids());
  const int algebraic = oracle_rank(m);
  const VertexCut cut = min_vertex_cut(scm.dag(), anc, y);

  TinResult r;
  r.diagnostics["algebraic_rank"] = algebraic;
  r.diagnostics["graphical_rank"] = cut.size;
  r.diagnostics["critical_cut"] = cut.cut.ids();
  r.diagnostics["ancestors"] = anc.ids();
  if (algebraic != cut.size)
    throw RouteDisagreement("rank of B[Y, Anc(Z)] differs from the min vertex cut", r.diagnostics);

  r.value = algebraic;
  r.omega_basis = oracle_null_space(m.transpose());
  r.omega_dim = static_cast<int>(r.omega_basis.cols());
  r.degenerate = degenerate_indices(scm, z, y);
  return r;
}

TinResult tin_oracle_generic(const Dag& dag, const VertexSet& z, const VertexSet& y,
                             std::uint64_t seed, int max_resamples) {
  nlohmann::json last;
  for (int attempt = 0; attempt <= max_resamples; ++attempt) {
    try {
      TinResult r = tin_oracle(sample_weights(dag, derive_seed(seed, {static_cast<std::uint64_t>(attempt)})), z, y);
      r.diagnostics["weight_resamples"] = attempt;
      return r;
    } catch (const RouteDisagreement& e) {
      last = e.diagnostics();
    }
  }
  throw RouteDisagreement("routes still disagree after resampling weights", last);
}

OmegaCheck omega_basis_check(const LinearScm& scm, const VertexSet& z, const VertexSet& y,
                             const Eigen::VectorXd& omega) {
  if (omega.size() != y.size()) throw std::invalid_argument("omega length must equal |y|");
  check_in_graph(scm, z, "z");
  check_in_graph(scm, y, "y");
  OmegaCheck out;
  if (omega.isZero(0.0)) {
    out.holds = out.zero_input = true;
    return out;
  }
  const Eigen::MatrixXd m = submatrix(build_mixing(scm), y.ids(), ancestors(scm.dag(), z).ids());
  const double scale = std::max(omega.norm() * m.norm(), 1e-300);
  out.holds = (omega.transpose() * m).norm() <= 1e-9 * scale;
  return out;
}

VertexSet degenerate_indices(const LinearScm& scm, const VertexSet& z, const VertexSet& y) {
  const Eigen::MatrixXd m = submatrix(build_mixing(scm), y.ids(), ancestors(scm.dag(), z).ids());
  const int full = oracle_rank(m);
  std::vector<int> out;
  for (int j = 0; j < y.size(); ++j) {
    Eigen::MatrixXd drop(m.rows() - 1, m.cols());
    drop << m.topRows(j), m.bottomRows(m.rows() - j - 1);
    if (oracle_rank(drop) == full - 1) out.push_back(y[j]);
  }
  return VertexSet(std::move(out));
}

bool gin_oracle(const LinearScm& scm, const VertexSet& z, const VertexSet& y) {
  check_in_graph(scm, z, "z");
  check_in_graph(scm, y, "y");
  const Eigen::MatrixXd b = build_mixing(scm);
  const int cov_rank = oracle_rank(rows_of(b, z) * rows_of(b, y).transpose());
  const int tin = oracle_rank(submatrix(b, y.ids(), ancestors(scm.dag(), z).ids()));
  return cov_rank < y.size() && tin == cov_rank;
}

bool in_oracle(const LinearScm& scm, const VertexSet& z, int y) {
  VertexSet zy = z;
  zy.insert(y);
  return oracle_rank(submatrix(build_mixing(scm), zy.ids(), ancestors(scm.dag(), z).ids())) == z.size();
}

Eigen::MatrixXd symbolic_stacked_cumulants(const LinearScm& scm, const NoiseCumulants& nc,
                                           const VertexSet& z, const VertexSet& y, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (k > nc.k_max()) throw std::invalid_argument("noise cumulants not available up to order k");
  if (nc.values.rows() != scm.size()) throw std::invalid_argument("one cumulant row per vertex");
  const Eigen::MatrixXd b = build_mixing(scm);
  const Eigen::MatrixXd bz = rows_of(b, z), by = rows_of(b, y);
  const Eigen::Index nz = bz.rows();
  Eigen::MatrixXd out((k - 1) * nz, by.rows());
  for (int j = 2; j <= k; ++j) {
    Eigen::MatrixXd power = bz.array().pow(j - 1).matrix();
    out.middleRows((j - 2) * nz, nz) = power * nc.order(j).asDiagonal() * by.transpose();
  }
  return out;
}

Dag augmented_graph(const Dag& dag, int k) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const int n = dag.size();
  std::vector<Edge> edges = dag.edges();
  for (int l = 2; l <= k; ++l) {
    const int off = (l - 1) * n;
    for (const Edge& e : dag.edges()) edges.push_back({off + e.to, off + e.from});
    for (int i = 0; i < n; ++i) edges.push_back({off + i, i});
  }
  return Dag(k * n, std::move(edges));
}

int augmented_graph_rank(const Dag& dag, const VertexSet& z, const VertexSet& y, int k) {
  const int n = dag.size();
  std::vector<int> sources;
  for (int l = 2; l <= k; ++l)
    for (int i : z) sources.push_back((l - 1) * n + i);
  return min_vertex_cut(augmented_graph(dag, k), VertexSet(std::move(sources)), y).size;
}

bool latent_observed_equivalence_check(const MeasurementModel& model, const VertexSet& z,
                                       const VertexSet& y) {
  if (z.intersects(y)) throw std::invalid_argument("z and y must be disjoint");
  const int n = model.latent.size();
  const LinearScm ext = extend_with_measurement(model);
  std::vector<int> zm, ym;
  for (int v : z) zm.push_back(v + n);
  for (int v : y) ym.push_back(v + n);
  return tin_oracle(ext, VertexSet(zm), VertexSet(ym)).value == tin_oracle(model.latent, z, y).value;
}

}  // namespace tin
