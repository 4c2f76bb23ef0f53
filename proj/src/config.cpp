#include "tin/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "tin/error.hpp"

namespace tin {
namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw DataError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw DataError(where + ": unknown key '" + it.key() + "'");
}

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename F>
auto guarded(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(where + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(where + ": " + e.what());
  }
}

}  // namespace

void SimulationConfig::validate() const {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (sample_size < 2) throw std::invalid_argument("sample_size must be at least 2");
  if (!(nsr >= 0.0)) throw std::invalid_argument("nsr must be non-negative");
  if (meas_coeffs.size() > 1 && static_cast<int>(meas_coeffs.size()) != n)
    throw std::invalid_argument("meas_coeffs needs one value or one per latent");
  latent_noise.validate();
  meas_noise.validate();
}

SimulationRun run_simulation(const SimulationConfig& cfg) {
  cfg.validate();
  Dag dag = generate_graph(cfg.graph_kind, cfg.n, derive_seed(cfg.seed, {0x67}), cfg.edge_prob);
  SimulationRun run;
  run.model.latent = sample_weights(dag, derive_seed(cfg.seed, {0x77}), cfg.weight_low, cfg.weight_high);
  run.model.coeffs = Eigen::VectorXd::Ones(cfg.n);
  if (cfg.meas_coeffs.size() == 1) run.model.coeffs.setConstant(cfg.meas_coeffs[0]);
  if (cfg.meas_coeffs.size() > 1)
    run.model.coeffs = Eigen::Map<const Eigen::VectorXd>(cfg.meas_coeffs.data(), cfg.n);
  run.model.nsr = cfg.nsr;
  run.model.meas_noise = cfg.meas_noise;
  run.data = sample_dataset(run.model, cfg.sample_size, cfg.latent_noise, derive_seed(cfg.seed, {0x64}));
  return run;
}

NoiseSpec noise_spec_from_json(const nlohmann::json& j, NoiseSpec base) {
  return guarded("noise spec", [&] {
    reject_unknown(j, {"family", "exp_low", "exp_high"}, "noise spec");
    if (j.contains("family")) base.family = parse_noise_family(j.at("family").get<std::string>());
    read(j, "exp_low", base.exp_low);
    read(j, "exp_high", base.exp_high);
    base.validate();
    return base;
  });
}

nlohmann::json to_json(const NoiseSpec& spec) {
  return {{"family", to_string(spec.family)}, {"exp_low", spec.exp_low}, {"exp_high", spec.exp_high}};
}

SimulationConfig simulation_config_from_json(const nlohmann::json& j) {
  return guarded("simulation config", [&] {
    reject_unknown(j,
                   {"graph_kind", "n", "edge_prob", "nsr", "sample_size", "seed", "latent_noise", "meas_noise",
                    "meas_coeffs", "weight_low", "weight_high"},
                   "simulation config");
    SimulationConfig c;
    if (j.contains("graph_kind")) c.graph_kind = parse_graph_kind(j.at("graph_kind").get<std::string>());
    read(j, "n", c.n);
    read(j, "edge_prob", c.edge_prob);
    read(j, "nsr", c.nsr);
    read(j, "sample_size", c.sample_size);
    read(j, "seed", c.seed);
    if (j.contains("latent_noise")) c.latent_noise = noise_spec_from_json(j.at("latent_noise"), c.latent_noise);
    if (j.contains("meas_noise")) c.meas_noise = noise_spec_from_json(j.at("meas_noise"), c.meas_noise);
    if (j.contains("meas_coeffs")) {
      const auto& mc = j.at("meas_coeffs");
      c.meas_coeffs = mc.is_array() ? mc.get<std::vector<double>>() : std::vector<double>{mc.get<double>()};
    }
    read(j, "weight_low", c.weight_low);
    read(j, "weight_high", c.weight_high);
    c.validate();
    return c;
  });
}

nlohmann::json to_json(const SimulationConfig& c) {
  return {{"graph_kind", to_string(c.graph_kind)},
          {"n", c.n},
          {"edge_prob", c.edge_prob},
          {"nsr", c.nsr},
          {"sample_size", c.sample_size},
          {"seed", c.seed},
          {"latent_noise", to_json(c.latent_noise)},
          {"meas_noise", to_json(c.meas_noise)},
          {"meas_coeffs", c.meas_coeffs},
          {"weight_low", c.weight_low},
          {"weight_high", c.weight_high}};
}

EstimatorParams params_from_json(const nlohmann::json& j, EstimatorParams p) {
  return guarded("estimator params", [&] {
    reject_unknown(j,
                   {"alpha", "kernel_width_factor", "svd_eps", "f_library", "k_max", "subset_hi_pct",
                    "subset_lo_pct", "hsic_max_samples", "seed", "hsic_permutation", "hsic_permutations",
                    "gain_factor", "isa_lr", "isa_decay", "isa_max_iter", "isa_tol"},
                   "estimator params");
    read(j, "alpha", p.alpha);
    read(j, "kernel_width_factor", p.kernel_width_factor);
    read(j, "svd_eps", p.svd_eps);
    read(j, "f_library", p.f_library);
    read(j, "k_max", p.k_max);
    read(j, "subset_hi_pct", p.subset_hi_pct);
    read(j, "subset_lo_pct", p.subset_lo_pct);
    read(j, "hsic_max_samples", p.hsic_max_samples);
    read(j, "seed", p.seed);
    read(j, "hsic_permutation", p.hsic_permutation);
    read(j, "hsic_permutations", p.hsic_permutations);
    read(j, "gain_factor", p.gain_factor);
    read(j, "isa_lr", p.isa_lr);
    read(j, "isa_decay", p.isa_decay);
    read(j, "isa_max_iter", p.isa_max_iter);
    read(j, "isa_tol", p.isa_tol);
    p.validate();
    return p;
  });
}

nlohmann::json to_json(const EstimatorParams& p) {
  return {{"alpha", p.alpha},
          {"kernel_width_factor", p.kernel_width_factor},
          {"svd_eps", p.svd_eps},
          {"f_library", p.f_library},
          {"k_max", p.k_max},
          {"subset_hi_pct", p.subset_hi_pct},
          {"subset_lo_pct", p.subset_lo_pct},
          {"hsic_max_samples", p.hsic_max_samples},
          {"seed", p.seed},
          {"hsic_permutation", p.hsic_permutation},
          {"hsic_permutations", p.hsic_permutations},
          {"gain_factor", p.gain_factor},
          {"isa_lr", p.isa_lr},
          {"isa_decay", p.isa_decay},
          {"isa_max_iter", p.isa_max_iter},
          {"isa_tol", p.isa_tol}};
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

}  // namespace tin
