#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wino::harness {

enum ExitCode : int
{
	exit_ok = 0,
	exit_runtime_error = 1,
	exit_usage_error = 2
};

/// Entry point of the wino_cli tool. args excludes the program name.
/// Subcommands: gen-matrices, conv, bench-error, cond.
/// Global flags: --seed, --json, --output.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace wino::harness
