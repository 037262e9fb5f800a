#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plaus::cli {

// Exit codes shared by every subcommand.
//   0  success; under `evaluate`, every claim met the standard
//   1  a claim missed the standard (evaluate) or a check failed (check)
//   2  parse, validation, usage, or config failure
//   3  internal error
enum class ExitCode : int { success = 0, standard_not_met = 1, invalid_input = 2, internal_error = 3 };

// `args` is argv without the program name. Reports go to `out`,
// diagnostics and errors to `err`. Output is byte-identical for identical
// (files, flags, seed, PLAUS_CONFIG).
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace plaus::cli
