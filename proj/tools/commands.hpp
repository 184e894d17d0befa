#pragma once

#include <iosfwd>

namespace logicnet::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_data = 2,
  exit_model = 3,
  exit_validation = 4,
  exit_training = 5,
  exit_io = 6,
};

// Entry point shared by main() and the tests. Never throws; every failure maps to an exit code
// with a message on `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace logicnet::cli
