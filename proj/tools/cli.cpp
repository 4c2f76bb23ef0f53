#include "cli.hpp"

#include <omp.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tin/benchmark.hpp"
#include "tin/config.hpp"
#include "tin/discovery.hpp"
#include "tin/error.hpp"
#include "tin/eval.hpp"
#include "tin/graph_io.hpp"
#include "tin/oracle.hpp"

namespace tin::cli {
namespace {

enum class Level { debug = 0, info = 1, warn = 2, quiet = 3 };

Level log_level() {
  const char* v = std::getenv("TIN_LOG");
  if (!v) return Level::warn;
  std::string s(v);
  if (s == "debug") return Level::debug;
  if (s == "info") return Level::info;
  if (s == "quiet" || s == "off" || s == "error") return Level::quiet;
  return Level::warn;
}

class Log {
 public:
  explicit Log(std::ostream& err) : err_(err), level_(log_level()) {}
  void info(const std::string& msg) const { emit(Level::info, "info", msg); }
  void debug(const std::string& msg) const { emit(Level::debug, "debug", msg); }

 private:
  void emit(Level l, const char* tag, const std::string& msg) const {
    if (l >= level_) err_ << "[" << tag << "] " << msg << "\n";
  }
  std::ostream& err_;
  Level level_;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw DataError("cannot write " + path);
  f << text;
}

std::vector<int> parse_vertex_list(const std::string& spec, const std::vector<std::string>& names) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto it = std::find(names.begin(), names.end(), tok);
    if (it != names.end()) {
      out.push_back(static_cast<int>(it - names.begin()));
      continue;
    }
    std::size_t used = 0;
    int idx = -1;
    try {
      idx = std::stoi(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size() || idx < 0 || idx >= static_cast<int>(names.size()))
      throw std::invalid_argument("unknown vertex '" + tok + "'");
    out.push_back(idx);
  }
  return out;
}

nlohmann::json name_list(const VertexSet& s, const std::vector<std::string>& names) {
  nlohmann::json j = nlohmann::json::array();
  for (int v : s) j.push_back(names.at(v));
  return j;
}

struct Options {
  std::string config, estimator = "two_steps", graph, z, y, out, data, truth, estimate;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int jobs = 0;
  bool basis = false;
};

void apply_jobs(int jobs) {
  if (jobs < 0) throw std::invalid_argument("--jobs must be non-negative");
  if (jobs > 0) omp_set_num_threads(jobs);
}

int cmd_simulate(const Options& o, std::ostream& out, const Log& log) {
  if (o.config.empty()) throw std::invalid_argument("simulate needs --config");
  SimulationConfig cfg = simulation_config_from_json(load_json_file(o.config));
  if (o.seed_given) cfg.seed = o.seed;
  log.info("simulating " + to_string(cfg.graph_kind) + " graph, n=" + std::to_string(cfg.n));
  SimulationRun run = run_simulation(cfg);
  const std::filesystem::path dir = o.out.empty() ? std::filesystem::path(".") : std::filesystem::path(o.out);
  std::filesystem::create_directories(dir);
  save_csv(run.data.observed, dir / "observed.csv");
  save_csv(run.data.latent, dir / "latent.csv");
  const auto& w = run.model.latent.weights();
  write_output((dir / "graph.txt").string(), write_edge_list(run.model.latent.dag(), &w), out);
  write_output((dir / "graph.json").string(),
               graph_to_json(run.model.latent.dag(), &w, run.data.observed.names).dump(2) + "\n", out);
  write_output((dir / "config.json").string(), to_json(cfg).dump(2) + "\n", out);
  out << "wrote " << dir.string() << "\n";
  return ok;
}

int cmd_oracle(const Options& o, std::ostream& out, const Log& log) {
  if (o.graph.empty() || o.z.empty() || o.y.empty()) throw std::invalid_argument("oracle needs --graph, --z and --y");
  GraphFile gf;
  if (o.graph.rfind("fixture:", 0) == 0) {
    gf.dag = fixture_graph(o.graph.substr(8));
    gf.names = default_names(gf.dag.size());
  } else {
    gf = load_graph(o.graph);
  }
  const VertexSet z(parse_vertex_list(o.z, gf.names));
  const VertexSet y(parse_vertex_list(o.y, gf.names));
  TinResult r;
  if (gf.weights) {
    r = tin_oracle(LinearScm(gf.dag, *gf.weights), z, y);
  } else {
    log.info("no weights in graph; sampling generic weights with seed " + std::to_string(o.seed));
    r = tin_oracle_generic(gf.dag, z, y, o.seed);
  }
  nlohmann::json j = to_json(r, o.basis, gf.names);
  j["z"] = name_list(z, gf.names);
  j["y"] = name_list(y, gf.names);
  j["critical_cut"] = name_list(VertexSet(r.diagnostics["critical_cut"].get<std::vector<int>>()), gf.names);
  write_output(o.out, j.dump(2) + "\n", out);
  return ok;
}

int cmd_discover(const Options& o, std::ostream& out, const Log& log) {
  if (o.data.empty()) throw std::invalid_argument("discover needs --data");
  Dataset data = load_csv(o.data);
  EstimatorParams params = o.config.empty() ? EstimatorParams{} : params_from_json(load_json_file(o.config));
  if (o.seed_given) params.seed = o.seed;
  apply_jobs(o.jobs);
  log.info("estimating group ordering with " + o.estimator + " on " + std::to_string(data.rows()) + " samples");
  OrderingEstimate est = estimate_group_ordering(data, o.estimator, params);
  nlohmann::json j = ordering_to_json(est.ordering, data.names);
  nlohmann::json ords = nlohmann::json::object();
  for (int i = 0; i < data.cols(); ++i) ords[data.names[i]] = est.ords[i];
  j["ords"] = ords;
  j["estimator"] = o.estimator;
  write_output(o.out, j.dump(2) + "\n", out);
  return ok;
}

int cmd_bench(const Options& o, std::ostream& out, const Log& log) {
  BenchmarkConfig cfg = o.config.empty() ? BenchmarkConfig{} : benchmark_config_from_json(load_json_file(o.config));
  if (o.seed_given) cfg.seed = o.seed;
  if (o.jobs > 0) cfg.jobs = o.jobs;
  log.info("running benchmark grid");
  BenchmarkReport report = run_benchmark(cfg);
  const std::string table = to_table(report);
  if (o.out.empty()) {
    out << table;
  } else {
    write_output(o.out + ".json", to_json(report).dump(2) + "\n", out);
    write_output(o.out + ".txt", table, out);
    out << table;
  }
  return ok;
}

int cmd_eval(const Options& o, std::ostream& out, const Log&) {
  if (o.truth.empty() || o.estimate.empty()) throw std::invalid_argument("eval needs --truth and --estimate");
  const nlohmann::json tj = load_json_file(o.truth);
  const nlohmann::json ej = load_json_file(o.estimate);
  std::vector<std::string> names;
  try {
    for (const auto& g : tj.at("groups"))
      for (const auto& v : g) names.push_back(v.get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("truth ordering: ") + e.what());
  }
  const double d = kendall_grouped_distance(ordering_from_json(tj, names), ordering_from_json(ej, names));
  nlohmann::json j{{"kendall_distance", d}};
  write_output(o.out, j.dump(2) + "\n", out);
  return ok;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transformed independent noise: oracle, estimators and benchmarks", "tin"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON configuration file");
    sub->add_option("--seed", o.seed, "base random seed")->each([&](const std::string&) { o.seed_given = true; });
    sub->add_option("--out", o.out, "output path");
  };
  auto* sim = app.add_subcommand("simulate", "sample a measurement-error dataset");
  common(sim);
  auto* ora = app.add_subcommand("oracle", "exact TIN from a graph");
  common(ora);
  ora->add_option("--graph", o.graph, "graph file or fixture:<name>");
  ora->add_option("--z", o.z, "comma-separated names or 0-based indices");
  ora->add_option("--y", o.y, "comma-separated names or 0-based indices");
  ora->add_flag("--basis", o.basis, "include an Omega basis");
  auto* dis = app.add_subcommand("discover", "estimate the ordered group decomposition");
  common(dis);
  dis->add_option("--data", o.data, "CSV file")->check(CLI::ExistingFile);
  dis->add_option("--estimator", o.estimator, "two_steps, subsets, rank or isa");
  dis->add_option("--jobs", o.jobs, "worker threads");
  auto* ben = app.add_subcommand("bench", "run the simulation benchmark grid");
  common(ben);
  ben->add_option("--jobs", o.jobs, "worker threads");
  auto* evl = app.add_subcommand("eval", "Kendall distance between two orderings");
  common(evl);
  evl->add_option("--truth", o.truth, "reference ordering JSON")->check(CLI::ExistingFile);
  evl->add_option("--estimate", o.estimate, "estimated ordering JSON")->check(CLI::ExistingFile);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ok : usage;
  }

  const Log log(err);
  try {
    if (*sim) return cmd_simulate(o, out, log);
    if (*ora) return cmd_oracle(o, out, log);
    if (*dis) return cmd_discover(o, out, log);
    if (*ben) return cmd_bench(o, out, log);
    if (*evl) return cmd_eval(o, out, log);
  } catch (const DataError& e) {
    err << "error: " << e.what() << "\n";
    return data_error;
  } catch (const MethodError& e) {
    err << "error: " << e.what() << "\n" << e.diagnostics().dump() << "\n";
    return method_failure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return method_failure;
  }
  return usage;
}

}  // namespace tin::cli
