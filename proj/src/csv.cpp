#include <charconv>
#include <fstream>
#include <sstream>

#include "tin/error.hpp"
#include "tin/eval.hpp"

namespace tin {
namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Dataset parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  Dataset d;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (d.names.empty()) {
      d.names = cells;
      for (const auto& name : d.names)
        if (name.empty()) throw DataError("csv line 1: empty column name");
      continue;
    }
    if (cells.size() != d.names.size())
      throw DataError("csv line " + std::to_string(lineno) + ": expected " + std::to_string(d.names.size()) +
                      " fields, got " + std::to_string(cells.size()));
    std::vector<double> row(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string& s = cells[c];
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), row[c]);
      if (ec != std::errc() || p != s.data() + s.size())
        throw DataError("csv line " + std::to_string(lineno) + ", column " + std::to_string(c + 1) +
                        ": not a number '" + s + "'");
    }
    rows.push_back(std::move(row));
  }
  if (d.names.empty()) throw DataError("csv has no header");
  d.samples.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d.names.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < d.names.size(); ++c)
      d.samples(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  try {
    d.validate();
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("csv: ") + e.what());
  }
  return d;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  Dataset d = parse_csv(buf.str());
  d.provenance = path.string();
  return d;
}

std::string write_csv(const Dataset& data) {
  std::string out;
  for (std::size_t c = 0; c < data.names.size(); ++c) {
    if (c) out += ',';
    out += data.names[c];
  }
  out += '\n';
  char buf[32];
  for (Eigen::Index r = 0; r < data.samples.rows(); ++r) {
    for (Eigen::Index c = 0; c < data.samples.cols(); ++c) {
      if (c) out += ',';
      auto [p, ec] = std::to_chars(buf, buf + sizeof buf, data.samples(r, c));
      out.append(buf, p);
    }
    out += '\n';
  }
  return out;
}

void save_csv(const Dataset& data, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << write_csv(data);
}

}  // namespace tin
