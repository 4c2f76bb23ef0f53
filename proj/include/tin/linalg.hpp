#pragma once

#include <Eigen/Dense>
#include <span>

namespace tin {

inline constexpr double kOracleRelTol = 1e-9;

// Rank with cutoff rel_tol * sigma_max, used on exact (model-derived) matrices.
int oracle_rank(const Eigen::MatrixXd& m, double rel_tol = kOracleRelTol);

// Rank with cutoff eps * sigma_max * max(rows, cols), used on estimated matrices.
int numerical_rank(const Eigen::MatrixXd& m, double eps);

// Orthonormal basis (columns) of the right null space under each cutoff rule.
Eigen::MatrixXd oracle_null_space(const Eigen::MatrixXd& m, double rel_tol = kOracleRelTol);
Eigen::MatrixXd numerical_null_space(const Eigen::MatrixXd& m, double eps);

// Right singular vectors ordered by ascending singular value; vectors past
// min(rows, cols) count as singular value zero.
struct AscendingSvd {
  Eigen::VectorXd sigma;  // length cols
  Eigen::MatrixXd v;      // cols x cols
};
AscendingSvd ascending_svd(const Eigen::MatrixXd& m);

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, std::span<const int> rows,
                          std::span<const int> cols);

// True when the column spans of a and b coincide up to tol (principal angles).
bool same_span(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double tol = 1e-8);

}  // namespace tin
