#ifndef BETACOAL_CLI_HPP_
#define BETACOAL_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "betacoal/numerics.hpp"

namespace betacoal {

enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2 };

/// Parses "golden", "sqrt2" or a decimal in (1, 2). Throws
/// std::invalid_argument otherwise.
AlphaParams parse_alpha(const std::string& text);

/// Runs the command line (without the program name). Results go to `out`
/// unless --out is given; diagnostics and usage go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betacoal

#endif  // BETACOAL_CLI_HPP_
