#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "tatecoh/error.hpp"

namespace tatecoh {

/// Exit codes: 0 ok, 1 self-test mismatch, 2 parse or invalid argument, 3 precision exhausted,
/// 4 schema violation, 5 unknown localization or non-stabilizing tower, 6 inconsistent pattern.
int exit_code_for(ErrorCode code);

/// Runs one invocation; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tatecoh
