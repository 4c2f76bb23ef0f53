#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tin/graph.hpp"
#include "tin/random.hpp"

namespace tin {

// Linear structural model X = A X + E; a(j, i) is the weight of edge i -> j.
class LinearScm {
 public:
  LinearScm() = default;
  LinearScm(Dag dag, Eigen::MatrixXd a);

  int size() const { return dag_.size(); }
  const Dag& dag() const { return dag_; }
  const Eigen::MatrixXd& weights() const { return a_; }
  double weight(int from, int to) const { return a_(to, from); }

 private:
  Dag dag_;
  Eigen::MatrixXd a_;
};

enum class NoiseFamily { powered_uniform, powered_gaussian, gaussian, uniform };

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::powered_uniform;
  double exp_low = 5.0;
  double exp_high = 7.0;

  static NoiseSpec latent_default() { return {NoiseFamily::powered_uniform, 5.0, 7.0}; }
  static NoiseSpec measurement_default() { return {NoiseFamily::powered_gaussian, 2.0, 4.0}; }
  void validate() const;
};

NoiseFamily parse_noise_family(std::string_view name);
std::string to_string(NoiseFamily f);

struct MeasurementModel {
  LinearScm latent;
  Eigen::VectorXd coeffs;  // c_i, one per latent
  double nsr = 0.0;        // var(E_i) / var(latent_i)
  NoiseSpec meas_noise = NoiseSpec::measurement_default();

  void validate() const;
};

// Column-major sample table: rows are samples, columns variables.
struct Dataset {
  Eigen::MatrixXd samples;
  std::vector<std::string> names;
  std::string provenance;

  int rows() const { return static_cast<int>(samples.rows()); }
  int cols() const { return static_cast<int>(samples.cols()); }
  int column(std::string_view name) const;
  Dataset select(std::span<const int> columns) const;
  void validate() const;
};

struct SimulatedData {
  Dataset observed;
  Dataset latent;
};

// One measured indicator of a latent vertex.
struct Indicator {
  int latent = 0;
  double loading = 1.0;
};

Eigen::MatrixXd build_mixing(const LinearScm& scm);

enum class GraphKind { chain, fully_connected, triangular_head_chain, erdos_renyi };

GraphKind parse_graph_kind(std::string_view name);
std::string to_string(GraphKind k);

Dag generate_graph(GraphKind kind, int n, std::uint64_t seed = 0, double edge_prob = 0.5);

// Named small graphs: fig2a..fig2d, fig4, chain4, full4, example13, v_structure.
Dag fixture_graph(std::string_view name);
std::vector<std::string> fixture_names();

LinearScm sample_weights(const Dag& dag, std::uint64_t seed, double lo = 0.5, double hi = 0.9);

// m x p matrix of i.i.d. noise; the exponent is drawn once per column, columns are centered.
Eigen::MatrixXd sample_noise(const NoiseSpec& spec, int m, int p, Rng& rng);

SimulatedData sample_dataset(const MeasurementModel& model, int m, const NoiseSpec& latent_noise,
                             std::uint64_t seed);

SimulatedData sample_indicators(const LinearScm& latent, std::span<const Indicator> indicators,
                                double nsr, const NoiseSpec& meas_noise, int m,
                                const NoiseSpec& latent_noise, std::uint64_t seed);

// Latents keep ids 0..n-1; indicator k becomes vertex n + k.
LinearScm attach_indicators(const LinearScm& latent, std::span<const Indicator> indicators);
LinearScm extend_with_measurement(const MeasurementModel& model);

std::vector<Indicator> single_indicators(const Eigen::VectorXd& coeffs);

}  // namespace tin
