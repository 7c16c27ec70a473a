#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace discordia::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitDomain = 3;
inline constexpr int kExitUsage = 64;

/// Runs one CLI invocation. args excludes the program name. Reports go to the
/// --out file when given, otherwise to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "lo:hi:step" (inclusive) or a comma-separated list.
std::vector<double> parse_list(const std::string& text);

}  // namespace discordia::cli
