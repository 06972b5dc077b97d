#pragma once

#include "vfa/io.hpp"

#include <iosfwd>
#include <string>

namespace vfa {

/// Exit statuses of the command line.
enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitParse = 2 };

/// {command, params, checks, timing_ms, result} for one command.  `params`
/// uses the long flag names with dashes replaced by underscores.  Throws
/// Error on invalid input.
Json run_command(const std::string& command, const Json& params, const Scenario* scenario = nullptr);

/// 0 iff every check in the report passed.
int exit_status(const Json& report);

/// Full command line: parse, run, write the report, return the exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vfa
