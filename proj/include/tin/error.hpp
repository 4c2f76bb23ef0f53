#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

namespace tin {

// Malformed input files or data that cannot be parsed.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A method ran but could not produce a trustworthy answer.
class MethodError : public std::runtime_error {
 public:
  MethodError(const std::string& what, nlohmann::json diagnostics = nlohmann::json::object())
      : std::runtime_error(what), diagnostics_(std::move(diagnostics)) {}
  const nlohmann::json& diagnostics() const { return diagnostics_; }

 private:
  nlohmann::json diagnostics_;
};

}  // namespace tin
