#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poslim::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kBudget = 2 };

/// Runs one subcommand. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace poslim::cli
