#include <algorithm>
#include <stdexcept>

#include "tin/error.hpp"
#include "tin/eval.hpp"

namespace tin {

double kendall_grouped_distance(const GroupOrdering& a, const GroupOrdering& b) {
  const int n = a.universe_size();
  if (b.universe_size() != n) throw std::invalid_argument("orderings cover different vertex sets");
  const auto ga = a.group_index(n);
  const auto gb = b.group_index(n);
  if (n < 2) return 0.0;
  auto cmp = [](int x, int y) { return (x < y) - (x > y); };
  long differ = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (cmp(ga[i], ga[j]) != cmp(gb[i], gb[j])) ++differ;
  return 2.0 * static_cast<double>(differ) / (static_cast<double>(n) * (n - 1));
}

nlohmann::json ordering_to_json(const GroupOrdering& o, const std::vector<std::string>& names) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : o.groups) {
    nlohmann::json members = nlohmann::json::array();
    for (int v : g) members.push_back(names.at(v));
    groups.push_back(members);
  }
  return {{"groups", groups}};
}

GroupOrdering ordering_from_json(const nlohmann::json& j, const std::vector<std::string>& names) {
  GroupOrdering o;
  try {
    for (const auto& g : j.at("groups")) {
      std::vector<int> ids;
      for (const auto& name : g) {
        const auto s = name.get<std::string>();
        auto it = std::find(names.begin(), names.end(), s);
        if (it == names.end()) throw DataError("ordering mentions unknown variable '" + s + "'");
        ids.push_back(static_cast<int>(it - names.begin()));
      }
      o.groups.emplace_back(std::move(ids));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("ordering json: ") + e.what());
  }
  try {
    o.validate(static_cast<int>(names.size()));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("ordering json: ") + e.what());
  }
  return o;
}

}  // namespace tin
