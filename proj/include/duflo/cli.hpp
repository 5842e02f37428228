#pragma once

// Command-line front end.  run_cli executes one invocation against in-memory
// streams (used by the tests); cli_main is the thin adapter for main().
//
// Exit codes: 0 = success, 1 = a mathematical check failed (Jacobi violation,
// relation residual, Duflo verification failure), 2 = bad input (unparsable
// flags, polynomials, or structure-constant files).

#include <string>
#include <vector>

namespace duflo {

struct CliResult {
  int exit_code = 0;
  std::string out;  // what would go to stdout
  std::string err;  // what would go to stderr
};

CliResult run_cli(const std::vector<std::string>& args);

int cli_main(int argc, char** argv);

}  // namespace duflo
