#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include <json.hpp>

#include "tin/graph.hpp"

namespace tin {

struct TinResult {
  int value = 0;
  int omega_dim = 0;
  Eigen::MatrixXd omega_basis;  // |Y| x omega_dim, columns span Omega
  VertexSet degenerate;         // members of Y
  nlohmann::json diagnostics = nlohmann::json::object();
};

// names maps vertex/column ids to labels; when empty ids are written as numbers.
nlohmann::json to_json(const TinResult& r, bool with_basis = false,
                       const std::vector<std::string>& names = {});

}  // namespace tin
