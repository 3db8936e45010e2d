#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace syncnet::cli {

/// Runs one subcommand (argv[0] is the program name). Results go to `out`,
/// diagnostics and the usage synopsis to `err`.
/// Returns 0 on success, 1 on usage or validation errors, 2 on numerical failure.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace syncnet::cli
