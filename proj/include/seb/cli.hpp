#pragma once

// Problem files, reports and the `seb` command line.

#include "seb/bounds.hpp"
#include "seb/heights.hpp"
#include "seb/search.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace seb {

inline constexpr const char* kVersion = "0.1.0";

/// Exit codes.
enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitInput = 2, kExitBudget = 3 };

/// Parses and validates a problem file; throws InputError.
ProblemInstance parse_problem(std::string_view json_text);

/// Canonical JSON text of an instance, parseable by parse_problem.
std::string serialize_problem(const ProblemInstance& inst);

/// The analyze report as JSON text.
std::string analyze_report_json(const ProblemInstance& inst, unsigned precision);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace seb
