#pragma once

// Subcommands of the seholo tool and the argument front end.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "seholo/config.hpp"
#include "seholo/output.hpp"

namespace seholo {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitConfig = 2,
  kExitInvariant = 3,
  kExitConvergence = 4,
};

struct CommandResult {
  std::vector<Table> tables;
  std::optional<std::string> warning;  // reported on stderr; exit code 4
};

/// Names of the subcommands, in help order.
const std::vector<std::string>& command_names();

/// Runs one subcommand. Throws seholo errors; never writes output itself.
CommandResult run_command(const std::string& name, const RunConfig& cfg);

/// Full front end: parses flags and the optional --config file, runs the
/// subcommand, writes tables, and maps errors to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seholo
