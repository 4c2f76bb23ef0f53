#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "tin/scm.hpp"
#include "tin/stats.hpp"

namespace tin {

struct SimulationConfig {
  GraphKind graph_kind = GraphKind::chain;
  int n = 5;
  double edge_prob = 0.5;  // erdos_renyi only
  double nsr = 0.5;
  int sample_size = 5000;
  std::uint64_t seed = 0;
  NoiseSpec latent_noise = NoiseSpec::latent_default();
  NoiseSpec meas_noise = NoiseSpec::measurement_default();
  std::vector<double> meas_coeffs;  // empty: all ones; one value: broadcast
  double weight_low = 0.5;
  double weight_high = 0.9;

  void validate() const;
};

struct SimulationRun {
  MeasurementModel model;
  SimulatedData data;
};

SimulationRun run_simulation(const SimulationConfig& cfg);

// Unknown keys are rejected so typos do not silently fall back to defaults.
SimulationConfig simulation_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimulationConfig& cfg);

NoiseSpec noise_spec_from_json(const nlohmann::json& j, NoiseSpec base);
nlohmann::json to_json(const NoiseSpec& spec);

EstimatorParams params_from_json(const nlohmann::json& j, EstimatorParams base = {});
nlohmann::json to_json(const EstimatorParams& p);

nlohmann::json load_json_file(const std::filesystem::path& path);

}  // namespace tin
