#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace logicnet::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;

  bool passed() const;
};

// Regression gate over the shipped fixture models and table transcriptions. A missing
// directory or fixture file throws DataError(io); anything wrong inside a file becomes a
// failed check that names the file and line.
ValidationReport validate_fixtures(const std::filesystem::path& dir);

}  // namespace logicnet::cli
