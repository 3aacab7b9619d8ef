#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pssc/error.hpp"
#include "pssc/simulation.hpp"

namespace pssc {

/// Every problem found while validating a scenario document.
class SchemaError : public Error {
public:
  explicit SchemaError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

private:
  std::vector<std::string> violations_;
};

/// Parses and validates a JSON scenario. Unknown keys, type errors, shape
/// mismatches and out-of-range values are all collected before throwing.
Scenario parse_scenario(std::string_view text);

/// Reads a scenario file; throws Error(Io) when it cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

/// Fully resolved document (defaults filled in). Parsing it yields a
/// scenario that reproduces the same run.
std::string scenario_to_json(const Scenario& scenario);

} // namespace pssc
