#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tqeval::cli {

// Exit codes are a function of the outcome class only.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;      // domain or file errors
inline constexpr int kExitGateFail = 3;   // tci/decide verdict FAIL or BORDERLINE_FAIL
inline constexpr int kExitNumerical = 4;  // convergence failures

// Full command dispatch. `args` excludes the program name. Reports go to
// `out`, diagnostics to `err`; the return value is the process exit code.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace tqeval::cli
