#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tin/graph.hpp"
#include "tin/scm.hpp"
#include "tin/stats.hpp"
#include "tin/tin_result.hpp"

namespace tin {

struct OrderingEstimate {
  GroupOrdering ordering;
  std::vector<int> ords;  // TIN({X_i}, X \ {X_i}) per variable
  std::vector<TinResult> results;
};

// Runs the named estimator once per variable; variables share a group when their values match.
OrderingEstimate estimate_group_ordering(const Dataset& data, const std::string& estimator,
                                         const EstimatorParams& params);

std::vector<int> oracle_ords(const LinearScm& scm);
GroupOrdering oracle_group_ordering(const LinearScm& scm);

// Outcome of a GIN test between column sets of a dataset.
struct GinOutcome {
  bool holds = false;
  double score = 0.0;     // p-value-like; larger means the condition fits better
  Eigen::VectorXd omega;  // one solution of cov(Z, Y) omega = 0, over y
};

class GinTester {
 public:
  virtual ~GinTester() = default;
  virtual int columns() const = 0;
  virtual GinOutcome test(std::span<const int> z, std::span<const int> y) const = 0;
};

class DataGinTester final : public GinTester {
 public:
  DataGinTester(Eigen::MatrixXd data, EstimatorParams params);
  int columns() const override { return static_cast<int>(data_.cols()); }
  GinOutcome test(std::span<const int> z, std::span<const int> y) const override;

 private:
  Eigen::MatrixXd data_;
  EstimatorParams params_;
};

// Exact GIN verdicts on the model; column k is the k-th indicator.
class OracleGinTester final : public GinTester {
 public:
  OracleGinTester(const LinearScm& latent, std::vector<Indicator> indicators);
  int columns() const override { return static_cast<int>(indicators_.size()); }
  GinOutcome test(std::span<const int> z, std::span<const int> y) const override;

 private:
  int n_latent_ = 0;
  std::vector<Indicator> indicators_;
  LinearScm extended_;
};

// Columns holding the two measurements of one latent.
struct MeasurementPair {
  int first = 0;
  int second = 0;
  friend bool operator==(const MeasurementPair&, const MeasurementPair&) = default;
};

inline constexpr double kOracleParentThreshold = 1e-3;
inline constexpr double kDataParentThreshold = 0.25;

struct LearnedStructure {
  Dag dag;
  std::vector<int> order;
  nlohmann::json diagnostics = nlohmann::json::object();
};

// Recovers the latent DAG from two measurements per latent: a causal order via
// GIN on one half of the measurements, then parents from the coordinates of the
// GIN solution that exceed parent_threshold.
LearnedStructure two_measurement_learn(const GinTester& gin, std::span<const MeasurementPair> pairing,
                                       double parent_threshold);

LearnedStructure two_measurement_learn(const Dataset& data, std::span<const MeasurementPair> pairing,
                                       const EstimatorParams& params,
                                       double parent_threshold = kDataParentThreshold);

// Pairs columns whose complement satisfies GIN with them; fails unless the passing pairs form a perfect matching.
std::vector<MeasurementPair> cluster_measurement_pairs(const GinTester& gin);

// Two column names per line.
std::vector<MeasurementPair> parse_pairing(std::string_view text, const std::vector<std::string>& names);

}  // namespace tin
