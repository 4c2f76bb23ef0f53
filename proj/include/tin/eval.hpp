#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tin/graph.hpp"
#include "tin/scm.hpp"

namespace tin {

// Fraction of vertex pairs whose relative order (before, same group, after)
// differs between the two orderings. Both must partition the same vertices.
double kendall_grouped_distance(const GroupOrdering& a, const GroupOrdering& b);

// Header row of names, then one sample per row.
Dataset parse_csv(std::string_view text);
Dataset load_csv(const std::filesystem::path& path);
std::string write_csv(const Dataset& data);
void save_csv(const Dataset& data, const std::filesystem::path& path);

nlohmann::json ordering_to_json(const GroupOrdering& o, const std::vector<std::string>& names);
GroupOrdering ordering_from_json(const nlohmann::json& j, const std::vector<std::string>& names);

}  // namespace tin
