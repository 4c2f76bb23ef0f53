#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "tin/scm.hpp"
#include "tin/stats.hpp"

namespace tin {

struct BenchmarkConfig {
  // "oracle" is accepted alongside the data estimators and scores the model itself.
  std::vector<std::string> estimators{"two_steps", "subsets", "rank", "isa"};
  std::vector<GraphKind> graph_kinds{GraphKind::chain, GraphKind::fully_connected};
  std::vector<int> ns{3, 4, 5, 6};
  std::vector<double> nsrs{0.5, 1.0};
  int sample_size = 5000;
  int reps = 20;
  std::uint64_t seed = 0;
  double edge_prob = 0.5;
  EstimatorParams params;
  NoiseSpec latent_noise = NoiseSpec::latent_default();
  NoiseSpec meas_noise = NoiseSpec::measurement_default();
  int jobs = 0;  // 0 leaves the OpenMP default

  void validate() const;
};

BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchmarkConfig& c);

struct CellResult {
  std::string estimator;
  GraphKind kind = GraphKind::chain;
  int n = 0;
  double nsr = 0.0;
  std::vector<double> distances;  // successful reps only
  std::vector<std::string> failures;
  double median = 0.0;
  double mean = 0.0;
  double sd = 0.0;
  double seconds = 0.0;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<CellResult> cells;
};

BenchmarkReport run_benchmark(const BenchmarkConfig& config);

// Timing lives under "timing" so the rest of the report is reproducible byte for byte.
nlohmann::json to_json(const BenchmarkReport& r);
std::string to_table(const BenchmarkReport& r);

}  // namespace tin
