#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmod {

/// Dispatch a full command line (without the program name). Writes results
/// to out and diagnostics to err. Exit codes: 0 ok, 2 usage, 3 budget
/// refusal, 4 internal-consistency failure, 1 other errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qmod
