#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fracwave::cli {

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitDomainError = 1;
inline constexpr int kExitUsageError = 2;

// Parses args (without the program name), runs exactly one subcommand and
// returns the process exit code. Usage text and diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fracwave::cli
