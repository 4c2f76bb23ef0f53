#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "tin/scm.hpp"
#include "tin/stats.hpp"
#include "tin/tin_result.hpp"

namespace tin {

// Outcome of asking whether omega^T Y is independent of Z. The score is
// p-value-like: larger means more independent, and independent == score > alpha.
struct Verdict {
  double score = 0.0;
  bool independent = false;
};

using IndependenceJudge = std::function<Verdict(const Eigen::VectorXd& omega)>;

// HSIC-based judge on data. When Z and Y already look independent at the raw
// p-value level, a direction also passes if its HSIC statistic drops below
// gain_factor times the raw one.
class HsicJudge {
 public:
  HsicJudge(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
            const EstimatorParams& params);

  Verdict operator()(const Eigen::VectorXd& omega) const;
  bool saturated() const { return saturated_; }
  double raw_p_value() const { return raw_.p_value; }

 private:
  EstimatorParams params_;
  Eigen::MatrixXd y_;
  HsicReference ref_;
  HsicResult raw_;
  bool saturated_ = false;
};

// Exact judge: omega^T Y is independent of Z iff omega annihilates B[y, Anc(z)].
IndependenceJudge oracle_judge(const LinearScm& scm, const VertexSet& z, const VertexSet& y);

// Walks right singular vectors of the system from the smallest singular value
// upward and counts consecutive independent directions.
TinResult two_steps_core(const Eigen::MatrixXd& system, const IndependenceJudge& judge);

// Subset characterization: smallest k such that every (k+1)-subset of Y admits
// an independent direction and some k-subset does not, each judged robustly
// through percentiles of the per-subset scores.
TinResult subsets_core(const Eigen::MatrixXd& system, const IndependenceJudge& judge,
                       const EstimatorParams& params);

// psi[i] is the stacked cumulant matrix up to order i + 2; stops at the first
// order where the rank stops growing.
TinResult rank_from_sequence(std::span<const Eigen::MatrixXd> psi, double eps);

TinResult tin_two_steps(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                        const EstimatorParams& params);
TinResult tin_subsets(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                      const EstimatorParams& params);
TinResult tin_rank(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                   const EstimatorParams& params);
TinResult tin_isa(const Eigen::MatrixXd& data, std::span<const int> z, std::span<const int> y,
                  const EstimatorParams& params);

using Estimator = std::function<TinResult(const Eigen::MatrixXd&, std::span<const int>,
                                          std::span<const int>, const EstimatorParams&)>;

Estimator estimator_by_name(const std::string& name);
std::vector<std::string> estimator_names();

}  // namespace tin
