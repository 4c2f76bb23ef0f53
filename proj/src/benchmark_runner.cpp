#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>

#include "tin/benchmark.hpp"
#include "tin/config.hpp"
#include "tin/discovery.hpp"
#include "tin/error.hpp"
#include "tin/estimators.hpp"
#include "tin/eval.hpp"

namespace tin {
namespace {

struct Job {
  GraphKind kind;
  int n;
  std::size_t nsr_index;
  int rep;
};

struct Outcome {
  double distance = NAN;
  std::string failure;
  double seconds = 0.0;
};

void summarize(CellResult& c) {
  if (c.distances.empty()) {
    c.median = c.mean = c.sd = NAN;
    return;
  }
  std::vector<double> d = c.distances;
  std::sort(d.begin(), d.end());
  const std::size_t k = d.size();
  c.median = k % 2 ? d[k / 2] : 0.5 * (d[k / 2 - 1] + d[k / 2]);
  double s = 0.0;
  for (double x : d) s += x;
  c.mean = s / static_cast<double>(k);
  double v = 0.0;
  for (double x : d) v += (x - c.mean) * (x - c.mean);
  c.sd = k > 1 ? std::sqrt(v / static_cast<double>(k - 1)) : 0.0;
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(); }

}  // namespace

void BenchmarkConfig::validate() const {
  if (estimators.empty() || graph_kinds.empty() || ns.empty() || nsrs.empty())
    throw std::invalid_argument("benchmark grid must not be empty");
  for (const auto& e : estimators)
    if (e != "oracle") estimator_by_name(e);
  for (int n : ns)
    if (n < 2) throw std::invalid_argument("benchmark graphs need n >= 2");
  for (double x : nsrs)
    if (!(x >= 0.0)) throw std::invalid_argument("nsr must be non-negative");
  if (sample_size < 10) throw std::invalid_argument("sample_size must be at least 10");
  if (reps < 1) throw std::invalid_argument("reps must be positive");
  if (jobs < 0) throw std::invalid_argument("jobs must be non-negative");
  params.validate();
  latent_noise.validate();
  meas_noise.validate();
}

BenchmarkConfig benchmark_config_from_json(const nlohmann::json& j) {
  BenchmarkConfig c;
  try {
    if (!j.is_object()) throw DataError("benchmark config: expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const auto& v = it.value();
      if (k == "estimators") c.estimators = v.get<std::vector<std::string>>();
      else if (k == "graph_kinds") {
        c.graph_kinds.clear();
        for (const auto& s : v) c.graph_kinds.push_back(parse_graph_kind(s.get<std::string>()));
      } else if (k == "ns") c.ns = v.get<std::vector<int>>();
      else if (k == "nsrs") c.nsrs = v.get<std::vector<double>>();
      else if (k == "sample_size") c.sample_size = v.get<int>();
      else if (k == "reps") c.reps = v.get<int>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "edge_prob") c.edge_prob = v.get<double>();
      else if (k == "params") c.params = params_from_json(v);
      else if (k == "latent_noise") c.latent_noise = noise_spec_from_json(v, c.latent_noise);
      else if (k == "meas_noise") c.meas_noise = noise_spec_from_json(v, c.meas_noise);
      else if (k == "jobs") c.jobs = v.get<int>();
      else throw DataError("benchmark config: unknown key '" + k + "'");
    }
    c.validate();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("benchmark config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("benchmark config: ") + e.what());
  }
  return c;
}

nlohmann::json to_json(const BenchmarkConfig& c) {
  std::vector<std::string> kinds;
  for (auto k : c.graph_kinds) kinds.push_back(to_string(k));
  return {{"estimators", c.estimators}, {"graph_kinds", kinds},   {"ns", c.ns},
          {"nsrs", c.nsrs},             {"sample_size", c.sample_size}, {"reps", c.reps},
          {"seed", c.seed},             {"edge_prob", c.edge_prob},     {"params", to_json(c.params)},
          {"latent_noise", to_json(c.latent_noise)}, {"meas_noise", to_json(c.meas_noise)}};
}

BenchmarkReport run_benchmark(const BenchmarkConfig& config) {
  config.validate();
  std::vector<Job> jobs;
  for (GraphKind kind : config.graph_kinds)
    for (int n : config.ns)
      for (std::size_t s = 0; s < config.nsrs.size(); ++s)
        for (int rep = 0; rep < config.reps; ++rep) jobs.push_back({kind, n, s, rep});
  const std::size_t n_est = config.estimators.size();
  std::vector<Outcome> outcomes(jobs.size() * n_est);

  const int saved_threads = omp_get_max_threads();
  if (config.jobs > 0) omp_set_num_threads(config.jobs);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    const Job& job = jobs[t];
    const std::uint64_t seed = derive_seed(config.seed, {static_cast<std::uint64_t>(job.kind),
                                                         static_cast<std::uint64_t>(job.n), job.nsr_index,
                                                         static_cast<std::uint64_t>(job.rep)});
    SimulationConfig sim;
    sim.graph_kind = job.kind;
    sim.n = job.n;
    sim.edge_prob = config.edge_prob;
    sim.nsr = config.nsrs[job.nsr_index];
    sim.sample_size = config.sample_size;
    sim.seed = seed;
    sim.latent_noise = config.latent_noise;
    sim.meas_noise = config.meas_noise;
    std::string setup_error;
    SimulationRun run;
    GroupOrdering truth;
    try {
      run = run_simulation(sim);
      truth = graph_group_decomposition(run.model.latent.dag());
    } catch (const std::exception& e) {
      setup_error = e.what();
    }
    for (std::size_t e = 0; e < n_est; ++e) {
      Outcome& out = outcomes[t * n_est + e];
      if (!setup_error.empty()) {
        out.failure = "setup: " + setup_error;
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        GroupOrdering est;
        if (config.estimators[e] == "oracle") {
          est = oracle_group_ordering(run.model.latent);
        } else {
          EstimatorParams p = config.params;
          p.seed = derive_seed(seed, {0x657374});
          est = estimate_group_ordering(run.data.observed, config.estimators[e], p).ordering;
        }
        out.distance = kendall_grouped_distance(truth, est);
      } catch (const std::exception& ex) {
        out.failure = ex.what();
      }
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  }
  if (config.jobs > 0) omp_set_num_threads(saved_threads);

  BenchmarkReport report;
  report.config = config;
  for (const auto& name : config.estimators)
    for (GraphKind kind : config.graph_kinds)
      for (int n : config.ns)
        for (double nsr : config.nsrs) report.cells.push_back({name, kind, n, nsr, {}, {}, 0, 0, 0, 0});
  const std::size_t per_est = config.graph_kinds.size() * config.ns.size() * config.nsrs.size();
  for (std::size_t t = 0; t < jobs.size(); ++t) {
    const std::size_t cell_in_est = t / static_cast<std::size_t>(config.reps);
    for (std::size_t e = 0; e < n_est; ++e) {
      CellResult& c = report.cells[e * per_est + cell_in_est];
      const Outcome& o = outcomes[t * n_est + e];
      if (o.failure.empty())
        c.distances.push_back(o.distance);
      else
        c.failures.push_back("rep " + std::to_string(jobs[t].rep) + ": " + o.failure);
      c.seconds += o.seconds;
    }
  }
  for (auto& c : report.cells) summarize(c);
  return report;
}

nlohmann::json to_json(const BenchmarkReport& r) {
  nlohmann::json cells = nlohmann::json::array(), timing = nlohmann::json::array();
  for (const auto& c : r.cells) {
    cells.push_back({{"estimator", c.estimator},
                     {"graph_kind", to_string(c.kind)},
                     {"n", c.n},
                     {"nsr", c.nsr},
                     {"distances", c.distances},
                     {"failures", c.failures},
                     {"median", number_or_null(c.median)},
                     {"mean", number_or_null(c.mean)},
                     {"sd", number_or_null(c.sd)}});
    timing.push_back({{"estimator", c.estimator}, {"graph_kind", to_string(c.kind)}, {"n", c.n},
                      {"nsr", c.nsr}, {"seconds", c.seconds}});
  }
  return {{"config", to_json(r.config)}, {"cells", cells}, {"timing", timing}};
}

std::string to_table(const BenchmarkReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-16s %3s %5s %8s %8s %8s %6s %9s\n", "estimator", "graph", "n", "nsr",
                "median", "mean", "sd", "fail", "seconds");
  out += line;
  for (const auto& c : r.cells) {
    std::snprintf(line, sizeof line, "%-10s %-16s %3d %5.2f %8.3f %8.3f %8.3f %6zu %9.1f\n", c.estimator.c_str(),
                  to_string(c.kind).c_str(), c.n, c.nsr, c.median, c.mean, c.sd, c.failures.size(), c.seconds);
    out += line;
  }
  return out;
}

}  // namespace tin
