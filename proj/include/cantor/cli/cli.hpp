#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor::cli {

/// Exit statuses of `run`.
enum Status : int { ok = 0, precondition_failed = 1, check_failed = 2, usage = 64 };

/// Parses and executes one command line (argv[0] is the program name),
/// writing the report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cantor::cli
