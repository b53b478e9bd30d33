#ifndef DIRPARETO_COMMANDS_HPP
#define DIRPARETO_COMMANDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "dirpareto/problem_io.hpp"

namespace dirpareto::cli {

/// Exit codes: verdict or certificate produced / error / refuted or none.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

/// Command-line overrides applied on top of the problem file.
struct RunOptions {
  std::optional<double> radius;
  std::optional<int> levels;
  std::optional<int> rays;
  std::optional<std::uint64_t> seed;
  std::optional<mintime::Norm> norm;
  std::optional<double> tol;
  bool weak = false;

  void apply(ProblemFile& p) const;
};

struct CommandResult {
  int exit_code = kExitError;
  std::string verdict;
  Json report;
  std::string csv;  // empty when the command has no point dump
  std::string svg;  // 2-D problems only
};

const std::vector<std::string>& command_names();

/// Runs one command. Library errors propagate as dirpareto::Error.
CommandResult run_command(const std::string& command, ProblemFile problem,
                          const RunOptions& options = {});

CommandResult run_example(const std::string& name, const RunOptions& options = {});
CommandResult list_examples();

/// Report for a failed run: exit code 1 plus the message.
CommandResult error_result(const std::string& command, const std::string& message, int code);

/// Compact, deterministic serialization of a report.
std::string dump_report(const Json& report);

}  // namespace dirpareto::cli

#endif  // DIRPARETO_COMMANDS_HPP
