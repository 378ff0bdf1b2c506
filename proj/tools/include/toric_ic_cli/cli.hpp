#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace toric_ic {

/// Runs the toric-ic command line. `args` excludes the program name.
/// Exit codes: 0 success / Vanishes, 2 Inconclusive, 1 error or failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace toric_ic
