#ifndef STOCKLOAN_CLI_COMMANDS_HPP
#define STOCKLOAN_CLI_COMMANDS_HPP

#include <ostream>
#include <string>

#include "config.hpp"

namespace stockloan::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kUsageError = 2,
  kSolverFailure = 3,
};

/// Each command writes a `#` header echoing the resolved config, then CSV.
/// Library exceptions propagate; row-level input errors are reported in an
/// `error` column instead.
int cmd_boundary(const RunConfig& config, std::ostream& out);
int cmd_price(const RunConfig& config, std::ostream& out);
int cmd_fee(const RunConfig& config, std::ostream& out);
int cmd_rebate(const RunConfig& config, std::ostream& out);
int cmd_validate(const RunConfig& config, std::ostream& out);
int cmd_tables(const RunConfig& config, std::ostream& out);

/// Dispatches by name; throws ValidationError for an unknown command.
int run_command(const std::string& name, const RunConfig& config, std::ostream& out);

}  // namespace stockloan::cli

#endif  // STOCKLOAN_CLI_COMMANDS_HPP
