#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tin::cli {

enum ExitCode : int { ok = 0, usage = 1, data_error = 2, method_failure = 3 };

// Runs one command line; output goes to out, logs and errors to err.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tin::cli
