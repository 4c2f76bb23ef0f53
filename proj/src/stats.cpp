#include "tin/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tin/kernels.hpp"
#include "tin/random.hpp"

namespace tin {
namespace {

double gamma_p_value(const kernels::HsicMoments& h, double m) {
  const double mean = (1.0 + h.mu_x * h.mu_y - h.mu_x - h.mu_y) / m;
  if (!(h.variance > 0.0) || !(mean > 0.0) || !(h.statistic > 0.0)) return 1.0;
  const double shape = mean * mean / h.variance;
  const double scale = h.variance * m / mean;
  return boost::math::gamma_q(shape, h.statistic / scale);
}

double permutation_p_value(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l, double observed,
                           int count, std::uint64_t seed) {
  const Eigen::Index m = k.rows();
  Rng rng = make_rng(seed, {0x7065726d});
  std::vector<Eigen::Index> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Eigen::MatrixXd lp(m, m);
  int exceed = 0;
  for (int b = 0; b < count; ++b) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index j = 0; j < m; ++j)
      for (Eigen::Index i = 0; i < m; ++i) lp(i, j) = l(perm[i], perm[j]);
    if (kernels::hsic_moments(k, lp).statistic >= observed) ++exceed;
  }
  return (1.0 + exceed) / (1.0 + count);
}

HsicResult finish_test(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l, const EstimatorParams& p) {
  auto h = kernels::hsic_moments(k, l);
  HsicResult r;
  r.statistic = h.statistic;
  r.p_value = p.hsic_permutation
                  ? permutation_p_value(k, l, h.statistic, p.hsic_permutations, p.seed)
                  : gamma_p_value(h, static_cast<double>(k.rows()));
  return r;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<int>& rows) {
  if (static_cast<Eigen::Index>(rows.size()) == x.rows()) return x;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

Eigen::MatrixXd columns(const Eigen::MatrixXd& data, std::span<const int> cols) {
  Eigen::MatrixXd out(data.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j] < 0 || cols[j] >= data.cols()) throw std::out_of_range("column index out of range");
    out.col(static_cast<Eigen::Index>(j)) = data.col(cols[j]);
  }
  return out;
}

}  // namespace

std::vector<std::string> default_f_library() {
  return {"identity", "square", "cube", "abs", "exp", "log_abs", "sin", "cos", "sigmoid", "tanh"};
}

void EstimatorParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!(kernel_width_factor > 0.0)) throw std::invalid_argument("kernel_width_factor must be positive");
  if (!(svd_eps > 0.0)) throw std::invalid_argument("svd_eps must be positive");
  if (f_library.empty()) throw std::invalid_argument("f_library must not be empty");
  for (const auto& f : f_library) apply_transform(f, Eigen::MatrixXd::Zero(1, 1));
  if (k_max < 3 || k_max > 4) throw std::invalid_argument("k_max must be 3 or 4");
  if (!(subset_lo_pct >= 0.0 && subset_lo_pct <= subset_hi_pct && subset_hi_pct <= 100.0))
    throw std::invalid_argument("subset percentiles must satisfy 0 <= lo <= hi <= 100");
  if (hsic_max_samples < 10) throw std::invalid_argument("hsic_max_samples must be at least 10");
  if (hsic_permutations < 1) throw std::invalid_argument("hsic_permutations must be positive");
  if (!(gain_factor > 0.0)) throw std::invalid_argument("gain_factor must be positive");
  if (!(isa_lr > 0.0) || isa_max_iter < 1 || !(isa_tol > 0.0) || !(isa_decay >= 0.0))
    throw std::invalid_argument("invalid isa settings");
}

Eigen::VectorXd kernel_widths(const Eigen::MatrixXd& x, double factor) {
  Eigen::VectorXd w(x.cols());
  const double m = static_cast<double>(x.rows());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double mean = x.col(c).mean();
    const double sd = std::sqrt((x.col(c).array() - mean).square().sum() / std::max(m - 1.0, 1.0));
    w(c) = sd > 0.0 ? factor * sd : 1.0;
  }
  return w;
}

std::vector<int> subsample_rows(int m, int max_rows, std::uint64_t seed) {
  std::vector<int> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  if (m <= max_rows) return rows;
  Rng rng = make_rng(seed, {0x73756273, static_cast<std::uint64_t>(m)});
  std::shuffle(rows.begin(), rows.end(), rng);
  rows.resize(max_rows);
  std::sort(rows.begin(), rows.end());
  return rows;
}

HsicResult hsic_test(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v, const EstimatorParams& params) {
  if (u.rows() != v.rows()) throw std::invalid_argument("hsic inputs need the same row count");
  return HsicReference(u, params).test(v);
}

HsicReference::HsicReference(const Eigen::MatrixXd& z, const EstimatorParams& params)
    : params_(params), rows_(subsample_rows(static_cast<int>(z.rows()), params.hsic_max_samples, params.seed)) {
  Eigen::MatrixXd zs = take_rows(z, rows_);
  gram_ = kernels::rbf_gram(zs, kernel_widths(zs, params_.kernel_width_factor));
}

HsicResult HsicReference::test(const Eigen::MatrixXd& v) const {
  Eigen::MatrixXd vs = take_rows(v, rows_);
  if (vs.rows() != gram_.rows()) throw std::invalid_argument("hsic candidate has the wrong row count");
  Eigen::MatrixXd l = kernels::rbf_gram(vs, kernel_widths(vs, params_.kernel_width_factor));
  return finish_test(gram_, l, params_);
}

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& x) {
  return x.rowwise() - x.colwise().mean();
}

Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd c = center_columns(x);
  for (Eigen::Index j = 0; j < c.cols(); ++j) {
    const double sd = std::sqrt(c.col(j).squaredNorm() / static_cast<double>(c.rows()));
    if (sd > 0.0) c.col(j) /= sd;
  }
  return c;
}

Eigen::MatrixXd empirical_cumulant_slice(const Eigen::MatrixXd& data, std::span<const int> z,
                                         std::span<const int> y, int k) {
  if (k < 2 || k > 4) throw std::invalid_argument("cumulant order must be 2, 3 or 4");
  return kernels::cumulant_slice(center_columns(columns(data, z)), center_columns(columns(data, y)), k);
}

Eigen::MatrixXd stacked_cumulants(const Eigen::MatrixXd& data, std::span<const int> z,
                                  std::span<const int> y, int k) {
  if (k < 2 || k > 4) throw std::invalid_argument("cumulant order must be 2, 3 or 4");
  Eigen::MatrixXd zc = center_columns(columns(data, z));
  Eigen::MatrixXd yc = center_columns(columns(data, y));
  const Eigen::Index nz = zc.cols();
  Eigen::MatrixXd out((k - 1) * nz, yc.cols());
  for (int order = 2; order <= k; ++order)
    out.middleRows((order - 2) * nz, nz) = kernels::cumulant_slice(zc, yc, order);
  return out;
}

Eigen::MatrixXd apply_transform(const std::string& name, const Eigen::MatrixXd& x) {
  auto a = x.array();
  if (name == "identity") return x;
  if (name == "square") return a.square().matrix();
  if (name == "cube") return a.cube().matrix();
  if (name == "abs") return a.abs().matrix();
  if (name == "exp") return a.exp().matrix();
  if (name == "log_abs") return a.abs().max(1e-12).log().matrix();
  if (name == "sin") return a.sin().matrix();
  if (name == "cos") return a.cos().matrix();
  if (name == "sigmoid") return (1.0 / (1.0 + (-a).exp())).matrix();
  if (name == "tanh") return a.tanh().matrix();
  throw std::invalid_argument("unknown transform '" + name + "'");
}

Eigen::MatrixXd transformed_features(const Eigen::MatrixXd& data, std::span<const int> z,
                                     const std::vector<std::string>& f_library) {
  if (f_library.empty()) throw std::invalid_argument("empty transform library");
  Eigen::MatrixXd zs = standardize_columns(columns(data, z));
  const Eigen::Index nz = zs.cols();
  Eigen::MatrixXd out(zs.rows(), static_cast<Eigen::Index>(f_library.size()) * nz);
  for (std::size_t f = 0; f < f_library.size(); ++f)
    out.middleCols(static_cast<Eigen::Index>(f) * nz, nz) = standardize_columns(apply_transform(f_library[f], zs));
  return out;
}

Eigen::MatrixXd transformed_cov_system(const Eigen::MatrixXd& data, std::span<const int> z,
                                       std::span<const int> y,
                                       const std::vector<std::string>& f_library) {
  // unit-variance features keep rows on a common noise scale; exp and cube
  // of heavy-tailed columns otherwise swamp the system
  return kernels::cross_moment(transformed_features(data, z, f_library), center_columns(columns(data, y)));
}

Eigen::MatrixXd whitened_cov_system(const Eigen::MatrixXd& data, std::span<const int> z,
                                    std::span<const int> y,
                                    const std::vector<std::string>& f_library) {
  const Eigen::MatrixXd f = transformed_features(data, z, f_library);
  const Eigen::MatrixXd sys = kernels::cross_moment(f, center_columns(columns(data, y)));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernels::cross_moment(f, f));
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = 1e-9 * std::max(ev.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (ev(i) > cutoff) keep.push_back(i);
  Eigen::MatrixXd w(static_cast<Eigen::Index>(keep.size()), f.cols());
  for (std::size_t r = 0; r < keep.size(); ++r)
    w.row(static_cast<Eigen::Index>(r)) = es.eigenvectors().col(keep[r]).transpose() / std::sqrt(ev(keep[r]));
  return w * sys;
}

double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw std::invalid_argument("percentile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace tin
