#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tin {

std::vector<std::string> default_f_library();

struct EstimatorParams {
  double alpha = 0.05;
  double kernel_width_factor = 0.7;  // RBF width = factor * column std
  double svd_eps = 0.005;
  std::vector<std::string> f_library = default_f_library();
  int k_max = 4;
  double subset_hi_pct = 90.0;
  double subset_lo_pct = 10.0;
  int hsic_max_samples = 1000;
  std::uint64_t seed = 0;

  bool hsic_permutation = false;  // permutation p-values instead of the gamma approximation
  int hsic_permutations = 199;
  double gain_factor = 0.5;  // HSIC ratio cutoff when the raw p-value cannot see any dependence

  double isa_lr = 0.05;
  double isa_decay = 0.005;
  int isa_max_iter = 500;
  double isa_tol = 1e-4;

  void validate() const;
};

struct HsicResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

Eigen::VectorXd kernel_widths(const Eigen::MatrixXd& x, double factor);

// Deterministic row subsample of size min(m, max_rows), sorted.
std::vector<int> subsample_rows(int m, int max_rows, std::uint64_t seed);

HsicResult hsic_test(const Eigen::MatrixXd& u, const Eigen::MatrixXd& v, const EstimatorParams& params);

// HSIC tests of many candidates against one fixed block; the block's Gram
// matrix is built once on the subsampled rows.
class HsicReference {
 public:
  HsicReference(const Eigen::MatrixXd& z, const EstimatorParams& params);

  // v has the full row count; it is subsampled the same way as z.
  HsicResult test(const Eigen::MatrixXd& v) const;
  int rows_used() const { return static_cast<int>(rows_.size()); }

 private:
  EstimatorParams params_;
  std::vector<int> rows_;
  Eigen::MatrixXd gram_;
};

Eigen::MatrixXd center_columns(const Eigen::MatrixXd& x);
Eigen::MatrixXd standardize_columns(const Eigen::MatrixXd& x);

// Order-k cross-cumulant slice between columns z and y (k in 2..4).
Eigen::MatrixXd empirical_cumulant_slice(const Eigen::MatrixXd& data, std::span<const int> z,
                                         std::span<const int> y, int k);

// Slices of orders 2..k stacked vertically.
Eigen::MatrixXd stacked_cumulants(const Eigen::MatrixXd& data, std::span<const int> z,
                                  std::span<const int> y, int k);

// Applies a named nonlinearity elementwise.
Eigen::MatrixXd apply_transform(const std::string& name, const Eigen::MatrixXd& x);

// Columns f(Z_std) for each f in the library, f-major, each rescaled to unit
// variance.
Eigen::MatrixXd transformed_features(const Eigen::MatrixXd& data, std::span<const int> z,
                                     const std::vector<std::string>& f_library);

// Rows: cov(f(Z_std), Y) over the features above. Row scaling leaves the null
// space unchanged.
Eigen::MatrixXd transformed_cov_system(const Eigen::MatrixXd& data, std::span<const int> z,
                                       std::span<const int> y,
                                       const std::vector<std::string>& f_library);

// The same system premultiplied by cov(F)^(-1/2). Under independence every
// row then carries the same sampling noise, so the smallest singular
// directions are efficient estimates. Null space unchanged when cov(F) is
// nonsingular; collinear features are dropped.
Eigen::MatrixXd whitened_cov_system(const Eigen::MatrixXd& data, std::span<const int> z,
                                    std::span<const int> y,
                                    const std::vector<std::string>& f_library);

// Linear-interpolated percentile (0..100) of a non-empty sample.
double percentile(std::vector<double> values, double pct);

}  // namespace tin
