#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace susy {

/// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerification = 1;
inline constexpr int kExitConfig = 2;

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "lo:hi:step" (inclusive) or a single value. Throws ConfigError.
std::vector<double> parse_range(const std::string& text);

/// Parses "x,y;x,y;...". Throws ConfigError.
std::vector<std::pair<double, double>> parse_points(const std::string& text);

}  // namespace susy
