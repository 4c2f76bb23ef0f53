#include "tin/linalg.hpp"

#include <algorithm>

namespace tin {
namespace {

int count_above(const Eigen::VectorXd& s, double cutoff) {
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff) ++r;
  return r;
}

Eigen::MatrixXd null_space_below(const Eigen::MatrixXd& m, double cutoff) {
  AscendingSvd svd = ascending_svd(m);
  int k = 0;
  while (k < svd.sigma.size() && svd.sigma(k) <= cutoff) ++k;
  return svd.v.leftCols(k);
}

double sigma_max(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace

int oracle_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  return count_above(s, rel_tol * s(0));
}

int numerical_rank(const Eigen::MatrixXd& m, double eps) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  const double t = eps * s(0) * static_cast<double>(std::max(m.rows(), m.cols()));
  return count_above(s, t);
}

Eigen::MatrixXd oracle_null_space(const Eigen::MatrixXd& m, double rel_tol) {
  return null_space_below(m, rel_tol * sigma_max(m));
}

Eigen::MatrixXd numerical_null_space(const Eigen::MatrixXd& m, double eps) {
  return null_space_below(m, eps * sigma_max(m) * static_cast<double>(std::max(m.rows(), m.cols())));
}

AscendingSvd ascending_svd(const Eigen::MatrixXd& m) {
  const Eigen::Index p = m.cols();
  AscendingSvd out{Eigen::VectorXd::Zero(p), Eigen::MatrixXd::Identity(p, p)};
  if (p == 0 || m.rows() == 0) return out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();  // descending, length min(rows, cols)
  const auto& v = svd.matrixV();
  // Column k of V pairs with s(k) for k < s.size(); the rest have sigma 0.
  for (Eigen::Index k = 0; k < p; ++k) {
    const Eigen::Index src = p - 1 - k;
    out.sigma(k) = src < s.size() ? s(src) : 0.0;
    out.v.col(k) = v.col(src);
  }
  return out;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, std::span<const int> rows,
                          std::span<const int> cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(rows[i], cols[j]);
  return out;
}

bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol) {
  if (a.rows() != b.rows()) return false;
  const int ra = oracle_rank(a), rb = oracle_rank(b);
  if (ra != rb) return false;
  if (ra == 0) return true;
  Eigen::MatrixXd both(a.rows(), a.cols() + b.cols());
  both << a, b;
  return oracle_rank(both, tol) == ra;
}

}  // namespace tin
