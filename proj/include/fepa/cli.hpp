#ifndef FEPA_CLI_HPP_
#define FEPA_CLI_HPP_

#include <exception>
#include <ostream>

namespace fepa::cli {

enum ExitCode {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInput = 2,
  kExitAdapter = 3,
};

// Maps an exception escaping a subcommand to its exit code.
int exit_code_for(const std::exception& e);

// Entry point of the `fepa` executable. Reports go to `out` unless --out is
// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fepa::cli

#endif  // FEPA_CLI_HPP_
