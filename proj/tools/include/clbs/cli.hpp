#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace clbs::cli {

enum ExitCode : int { ok = 0, failed = 1, input_error = 2 };

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Paths of the shipped Example 1 graph and its golden show-intervals dump.
std::string default_example_graph();
std::string default_example_golden();

}  // namespace clbs::cli
