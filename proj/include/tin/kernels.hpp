#pragma once

#include <Eigen/Dense>

// Hot loops behind the statistical tests. The default namespace holds the
// OpenMP versions; tin::kernels::serial keeps plain loop references that the
// tests and the benchmark compare against.
namespace tin::kernels {

// Product Gaussian kernel: K(i, j) = exp(-sum_c (x_ic - x_jc)^2 / (2 w_c^2)).
Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& widths);

struct HsicMoments {
  double statistic = 0.0;  // sum(Kc .* Lc) / m
  double variance = 0.0;   // null variance of the statistic (gamma approximation)
  double mu_x = 0.0;       // mean off-diagonal entry of K
  double mu_y = 0.0;
};

HsicMoments hsic_moments(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l);

// E[z^(order-1) y] style cross-cumulant slice for centered columns, order 2..4.
Eigen::MatrixXd cumulant_slice(const Eigen::MatrixXd& zc, const Eigen::MatrixXd& yc, int order);

// (1/m) a^T b.
Eigen::MatrixXd cross_moment(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

namespace serial {
Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& widths);
HsicMoments hsic_moments(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l);
Eigen::MatrixXd cumulant_slice(const Eigen::MatrixXd& zc, const Eigen::MatrixXd& yc, int order);
Eigen::MatrixXd cross_moment(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
}  // namespace serial

}  // namespace tin::kernels
