#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tin/graph.hpp"
#include "tin/scm.hpp"

namespace tin {

// Graph as read from disk; weights are present when every edge carried one.
struct GraphFile {
  Dag dag;
  std::optional<Eigen::MatrixXd> weights;
  std::vector<std::string> names;
};

// "n=<count>" header, then one "i j" or "i j w" line per edge; '#' starts a comment.
GraphFile parse_edge_list(std::string_view text);
GraphFile parse_graph_json(const nlohmann::json& j);
GraphFile load_graph(const std::filesystem::path& path);

std::string write_edge_list(const Dag& dag, const Eigen::MatrixXd* weights = nullptr);
nlohmann::json graph_to_json(const Dag& dag, const Eigen::MatrixXd* weights = nullptr,
                             const std::vector<std::string>& names = {});

std::vector<std::string> default_names(int n);

}  // namespace tin
