#ifndef LACUNA_CLI_HPP
#define LACUNA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lacuna::cli {

/// Stable exit codes.
enum ExitCode : int
{
  kSuccess = 0,
  kParseError = 2,
  kResourceLimit = 3,
  kInvalidParameters = 4,
};

/// Runs one command. Reports go to `out` (or the --output file), errors to
/// `err` as a single JSON line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lacuna::cli

#endif // LACUNA_CLI_HPP
