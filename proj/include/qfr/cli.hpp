#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qfr::cli {

// Runs one subcommand. args excludes the program name. Returns the exit code:
// 0 ok, 1 mathematical failure, 2 error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfr::cli
