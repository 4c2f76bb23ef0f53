#include "tin/tin_result.hpp"

namespace tin {

nlohmann::json to_json(const TinResult& r, bool with_basis, const std::vector<std::string>& names) {
  nlohmann::json degenerate = nlohmann::json::array();
  for (int v : r.degenerate) {
    if (!names.empty())
      degenerate.push_back(names.at(v));
    else
      degenerate.push_back(v);
  }
  nlohmann::json j{{"value", r.value},
                   {"omega_dim", r.omega_dim},
                   {"degenerate", degenerate},
                   {"diagnostics", r.diagnostics}};
  if (with_basis) {
    nlohmann::json basis = nlohmann::json::array();
    for (Eigen::Index c = 0; c < r.omega_basis.cols(); ++c) {
      std::vector<double> col(r.omega_basis.col(c).data(), r.omega_basis.col(c).data() + r.omega_basis.rows());
      basis.push_back(col);
    }
    j["omega_basis"] = basis;
  }
  return j;
}

}  // namespace tin
