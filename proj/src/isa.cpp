#include <cmath>

#include "tin/error.hpp"
#include "tin/estimators.hpp"
#include "tin/random.hpp"

namespace tin {
namespace {

struct IsaFit {
  Eigen::MatrixXd w;
  int iterations = 0;
  bool converged = false;
};

// Natural-gradient ICA on the Y block. The Z block of the demixing matrix is
// held at the identity and the off-diagonal blocks at zero, so only W_YY moves.
IsaFit fit_demixing(const Eigen::MatrixXd& yc, Eigen::MatrixXd w, const EstimatorParams& p) {
  const double m = static_cast<double>(yc.rows());
  const Eigen::Index q = yc.cols();
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(q, q);
  IsaFit fit;
  for (int t = 0; t < p.isa_max_iter; ++t) {
    Eigen::MatrixXd s = yc * w.transpose();  // m x q
    Eigen::MatrixXd phi = s.array().tanh().matrix();
    Eigen::MatrixXd step = (eye - phi.transpose() * s / m) * w;
    const double lr = p.isa_lr / (1.0 + p.isa_decay * t);
    w += lr * step;
    fit.iterations = t + 1;
    if (!w.allFinite()) break;
    if (lr * step.norm() < p.isa_tol) {
      fit.converged = true;
      break;
    }
  }
  fit.w = std::move(w);
  return fit;
}

}  // namespace

TinResult tin_isa(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                  const EstimatorParams& params) {
  params.validate();
  if (z.empty() || y.empty()) throw std::invalid_argument("z and y must be non-empty");
  if (data.rows() < 10) throw MethodError("too few samples for an estimator", {{"samples", data.rows()}});
  const Eigen::Index q = static_cast<Eigen::Index>(y.size());
  Eigen::MatrixXd yc(data.rows(), q);
  for (Eigen::Index j = 0; j < q; ++j) yc.col(j) = data.col(y[static_cast<std::size_t>(j)]);
  yc = center_columns(yc);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(yc.transpose() * yc / static_cast<double>(yc.rows()));
  if (eig.eigenvalues().minCoeff() <= 1e-12 * std::max(eig.eigenvalues().maxCoeff(), 1e-300))
    throw MethodError("covariance of y is singular; cannot whiten");
  const Eigen::MatrixXd w0 = eig.operatorInverseSqrt();
  const double det0 = std::abs(w0.determinant());

  Rng rng = make_rng(params.seed, {0x697361});
  std::normal_distribution<double> jitter(0.0, 0.1);
  IsaFit fit;
  int restarts = 0;
  for (;; ++restarts) {
    Eigen::MatrixXd start = w0;
    if (restarts > 0)
      start = w0 * (Eigen::MatrixXd::Identity(q, q) + Eigen::MatrixXd::NullaryExpr(q, q, [&] { return jitter(rng); }));
    fit = fit_demixing(yc, start, params);
    const bool invertible = fit.w.allFinite() && std::abs(fit.w.determinant()) > 1e-10 * det0;
    if (invertible) break;
    if (restarts == 3) throw MethodError("demixing matrix became singular", {{"restarts", restarts}});
  }

  HsicJudge judge(data, z, y, params);
  std::vector<double> scores;
  std::vector<Eigen::VectorXd> kept;
  for (Eigen::Index i = 0; i < q; ++i) {
    Eigen::VectorXd row = fit.w.row(i).transpose();
    Verdict v = judge(row);
    scores.push_back(v.score);
    if (v.independent) kept.push_back(row.normalized());
  }
  TinResult r;
  r.omega_dim = static_cast<int>(kept.size());
  r.value = static_cast<int>(q) - r.omega_dim;
  r.omega_basis.resize(q, r.omega_dim);
  for (int k = 0; k < r.omega_dim; ++k) r.omega_basis.col(k) = kept[k];
  r.diagnostics["iterations"] = fit.iterations;
  r.diagnostics["converged"] = fit.converged;
  r.diagnostics["restarts"] = restarts;
  r.diagnostics["scores"] = scores;
  r.diagnostics["saturated"] = judge.saturated();
  return r;
}

}  // namespace tin
