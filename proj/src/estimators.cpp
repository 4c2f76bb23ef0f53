#include "tin/estimators.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "tin/error.hpp"
#include "tin/linalg.hpp"

namespace tin {
namespace {

Eigen::MatrixXd pick_columns(const Eigen::MatrixXd& data, std::span<const int> cols) {
  Eigen::MatrixXd out(data.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= data.cols()) throw std::out_of_range("column index out of range");
    out.col(static_cast<Eigen::Index>(j)) = data.col(cols[j]);
  }
  return out;
}

void check_inputs(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                  const EstimatorParams& params) {
  params.validate();
  if (z.empty() || y.empty()) throw std::invalid_argument("z and y must be non-empty");
  if (data.rows() < 10) throw MethodError("too few samples for an estimator", {{"samples", data.rows()}});
  if (!data.allFinite()) throw std::invalid_argument("data contains non-finite values");
}

Eigen::VectorXd embed(const Eigen::VectorXd& sub, std::uint32_t mask, int q) {
  Eigen::VectorXd full = Eigen::VectorXd::Zero(q);
  int k = 0;
  for (int j = 0; j < q; ++j)
    if (mask & (1u << j)) full(j) = sub(k++);
  return full;
}

}  // namespace

HsicJudge::HsicJudge(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                     const EstimatorParams& params)
    : params_(params), y_(pick_columns(data, y)), ref_(pick_columns(data, z), params) {
  raw_ = ref_.test(y_);
  saturated_ = raw_.p_value > params_.alpha;
}

Verdict HsicJudge::operator()(const Eigen::VectorXd& omega) const {
  if (omega.size() != y_.cols()) throw std::invalid_argument("omega length must equal |y|");
  HsicResult r = ref_.test(y_ * omega);
  if (!saturated_) return {r.p_value, r.p_value > params_.alpha};
  // Raw data already looks independent, so the p-value alone cannot tell directions apart;
  // a direction that sheds most of the raw dependence also counts as independent.
  const double ratio = raw_.statistic > 0.0 ? r.statistic / raw_.statistic : 0.0;
  const double gain_score = params_.alpha * params_.gain_factor / std::max(ratio, 1e-300);
  return {std::max(r.p_value, gain_score), r.p_value > params_.alpha || ratio < params_.gain_factor};
}

IndependenceJudge oracle_judge(const LinearScm& scm, const VertexSet& z, const VertexSet& y) {
  const Eigen::MatrixXd m = submatrix(build_mixing(scm), y.ids(), ancestors(scm.dag(), z).ids());
  const double scale = std::max(m.norm(), 1e-300);
  return [m, scale](const Eigen::VectorXd& omega) {
    const bool ind = (omega.transpose() * m).norm() <= 1e-9 * scale * omega.norm();
    return Verdict{ind ? 1.0 : 0.0, ind};
  };
}

TinResult two_steps_core(const Eigen::MatrixXd& system, const IndependenceJudge& judge) {
  const int q = static_cast<int>(system.cols());
  AscendingSvd svd = ascending_svd(system);
  TinResult r;
  std::vector<double> scores;
  int passes = 0;
  while (passes < q) {
    Verdict v = judge(svd.v.col(passes));
    scores.push_back(v.score);
    if (!v.independent) break;
    ++passes;
  }
  r.omega_dim = passes;
  r.value = q - passes;
  r.omega_basis = svd.v.leftCols(passes);
  r.diagnostics["singular_values"] = std::vector<double>(svd.sigma.data(), svd.sigma.data() + q);
  r.diagnostics["scores"] = scores;
  return r;
}

TinResult subsets_core(const Eigen::MatrixXd& system, const IndependenceJudge& judge,
                       const EstimatorParams& params) {
  const int q = static_cast<int>(system.cols());
  if (q > 20) throw std::invalid_argument("subsets estimator limited to |y| <= 20");
  std::map<std::uint32_t, double> memo;
  auto score_of = [&](std::uint32_t mask) {
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    std::vector<int> cols;
    for (int j = 0; j < q; ++j)
      if (mask & (1u << j)) cols.push_back(j);
    Eigen::VectorXd sub;
    if (cols.size() == 1) {
      sub = Eigen::VectorXd::Ones(1);
    } else {
      std::vector<int> rows(static_cast<std::size_t>(system.rows()));
      for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
      sub = ascending_svd(submatrix(system, rows, cols)).v.col(0);
    }
    double s = judge(embed(sub, mask, q)).score;
    memo.emplace(mask, s);
    return s;
  };
  auto scores_of_size = [&](int size) {
    std::vector<double> out;
    for (std::uint32_t mask = 1; mask < (1u << q); ++mask)
      if (std::popcount(mask) == size) out.push_back(score_of(mask));
    return out;
  };

  const double alpha = params.alpha;
  nlohmann::json trace = nlohmann::json::array();
  int chosen = -1, first_cond1 = -1;
  for (int k = 0; k <= q && chosen < 0; ++k) {
    double hi = 1.0, lo = 0.0;
    bool cond1 = true, cond2 = true;
    if (k + 1 <= q) {
      hi = percentile(scores_of_size(k + 1), 100.0 - params.subset_hi_pct);
      cond1 = hi > alpha;
    }
    if (k > 0) {
      lo = percentile(scores_of_size(k), params.subset_lo_pct);
      cond2 = lo <= alpha;
    }
    trace.push_back({{"k", k}, {"all_subsets_score", hi}, {"some_subset_score", lo},
                     {"cond1", cond1}, {"cond2", cond2}});
    if (cond1 && first_cond1 < 0) first_cond1 = k;
    if (cond1 && cond2) chosen = k;
  }
  TinResult r;
  r.diagnostics["trace"] = trace;
  r.diagnostics["subsets_tested"] = memo.size();
  if (chosen < 0) {
    // k = |y| always satisfies cond1, so first_cond1 is set.
    chosen = first_cond1;
    r.diagnostics["inconsistent"] = true;
  }
  r.value = chosen;
  r.omega_dim = q - chosen;
  r.omega_basis = ascending_svd(system).v.leftCols(q - chosen);
  return r;
}

TinResult rank_from_sequence(std::span<const Eigen::MatrixXd> psi, double eps) {
  if (psi.empty()) throw std::invalid_argument("empty cumulant sequence");
  std::vector<int> ranks;
  for (const auto& m : psi) ranks.push_back(numerical_rank(m, eps));
  TinResult r;
  r.diagnostics["ranks"] = ranks;
  std::size_t stop = ranks.size() - 1;
  bool stopped = false;
  for (std::size_t i = 0; i + 1 < ranks.size(); ++i) {
    if (ranks[i + 1] == ranks[i]) {
      stop = i;
      stopped = true;
      break;
    }
    if (ranks[i + 1] < ranks[i]) {
      stop = i + 1;
      stopped = true;
      r.diagnostics["rank_decreased"] = true;
      break;
    }
  }
  if (!stopped) r.diagnostics["no_stop"] = true;
  r.diagnostics["stop_order"] = static_cast<int>(stop) + 2;
  r.value = ranks[stop];
  r.omega_basis = numerical_null_space(psi[stop], eps);
  r.omega_dim = static_cast<int>(r.omega_basis.cols());
  return r;
}

TinResult tin_two_steps(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                        const EstimatorParams& params) {
  check_inputs(data, z, y, params);
  HsicJudge judge(data, z, y, params);
  TinResult r = two_steps_core(whitened_cov_system(data, z, y, params.f_library), std::cref(judge));
  r.diagnostics["raw_p_value"] = judge.raw_p_value();
  r.diagnostics["saturated"] = judge.saturated();
  return r;
}

TinResult tin_subsets(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                      const EstimatorParams& params) {
  check_inputs(data, z, y, params);
  HsicJudge judge(data, z, y, params);
  TinResult r = subsets_core(whitened_cov_system(data, z, y, params.f_library), std::cref(judge), params);
  r.diagnostics["raw_p_value"] = judge.raw_p_value();
  r.diagnostics["saturated"] = judge.saturated();
  return r;
}

TinResult tin_rank(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                   const EstimatorParams& params) {
  check_inputs(data, z, y, params);
  // Column scaling leaves every rank unchanged but balances the orders.
  const Eigen::MatrixXd std_data = standardize_columns(data);
  std::vector<Eigen::MatrixXd> psi;
  for (int k = 2; k <= params.k_max; ++k) psi.push_back(stacked_cumulants(std_data, z, y, k));
  return rank_from_sequence(psi, params.svd_eps);
}

Estimator estimator_by_name(const std::string& name) {
  if (name == "two_steps") return tin_two_steps;
  if (name == "subsets") return tin_subsets;
  if (name == "rank") return tin_rank;
  if (name == "isa") return tin_isa;
  throw std::invalid_argument("unknown estimator '" + name + "'");
}

std::vector<std::string> estimator_names() { return {"two_steps", "subsets", "rank", "isa"}; }

}  // namespace tin
