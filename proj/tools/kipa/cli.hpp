#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kipa::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalid = 2, kNumeric = 3 };

/// Runs one subcommand. args excludes the program name. The result record
/// goes to `out`; diagnostics and log lines go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kipa::cli
