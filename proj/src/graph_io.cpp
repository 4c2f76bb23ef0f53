#include "tin/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tin/error.hpp"

namespace tin {
namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

GraphFile finish(int n, std::vector<Edge> edges, std::vector<double> ws, std::vector<std::string> names,
                 const std::string& where) {
  GraphFile out;
  try {
    out.dag = Dag(n, edges);
  } catch (const std::exception& e) {
    throw DataError(where + ": " + e.what());
  }
  if (!ws.empty()) {
    if (ws.size() != edges.size()) throw DataError(where + ": either all edges carry weights or none");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t k = 0; k < edges.size(); ++k) {
      if (ws[k] == 0.0) throw DataError(where + ": zero edge weight");
      a(edges[k].to, edges[k].from) = ws[k];
    }
    out.weights = std::move(a);
  }
  out.names = names.empty() ? default_names(n) : std::move(names);
  if (static_cast<int>(out.names.size()) != n) throw DataError(where + ": one name per vertex required");
  return out;
}

}  // namespace

std::vector<std::string> default_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back("X" + std::to_string(i + 1));
  return names;
}

GraphFile parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::vector<double> ws;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (n < 0) {
      if (line.rfind("n=", 0) != 0) throw DataError(where + ": expected header 'n=<count>'");
      auto body = trim(std::string_view(line).substr(2));
      auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), n);
      if (ec != std::errc() || p != body.data() + body.size() || n < 0)
        throw DataError(where + ": bad vertex count '" + body + "'");
      continue;
    }
    std::istringstream fields(line);
    long long i = 0, j = 0;
    if (!(fields >> i >> j)) throw DataError(where + ": expected 'i j [weight]'");
    if (i < 0 || j < 0 || i >= n || j >= n) throw DataError(where + ": vertex id out of range");
    edges.push_back({static_cast<int>(i), static_cast<int>(j)});
    double w = 0.0;
    if (fields >> w) ws.push_back(w);
    std::string extra;
    if (fields >> extra) throw DataError(where + ": trailing token '" + extra + "'");
  }
  if (n < 0) throw DataError("edge list has no 'n=' header");
  return finish(n, std::move(edges), std::move(ws), {}, "edge list");
}

GraphFile parse_graph_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 0) throw DataError("graph json: negative n");
    std::vector<Edge> edges;
    std::vector<double> ws;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3) throw DataError("graph json: edge must be [i, j] or [i, j, w]");
      int a = e[0].get<int>(), b = e[1].get<int>();
      if (a < 0 || b < 0 || a >= n || b >= n) throw DataError("graph json: vertex id out of range");
      edges.push_back({a, b});
      if (e.size() == 3) ws.push_back(e[2].get<double>());
    }
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return finish(n, std::move(edges), std::move(ws), std::move(names), "graph json");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("graph json: ") + e.what());
  }
}

GraphFile load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open graph file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path.string() + ": " + e.what());
    }
    return parse_graph_json(j);
  }
  return parse_edge_list(text);
}

std::string write_edge_list(const Dag& dag, const Eigen::MatrixXd* weights) {
  std::ostringstream out;
  out.precision(17);
  out << "n=" << dag.size() << "\n";
  for (const Edge& e : dag.edges()) {
    out << e.from << " " << e.to;
    if (weights) out << " " << (*weights)(e.to, e.from);
    out << "\n";
  }
  return out.str();
}

nlohmann::json graph_to_json(const Dag& dag, const Eigen::MatrixXd* weights,
                             const std::vector<std::string>& names) {
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : dag.edges()) {
    if (weights)
      edges.push_back({e.from, e.to, (*weights)(e.to, e.from)});
    else
      edges.push_back({e.from, e.to});
  }
  nlohmann::json j{{"n", dag.size()}, {"edges", edges}};
  if (!names.empty()) j["names"] = names;
  return j;
}

}  // namespace tin
