#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dqa {

// Exit codes: 0 success, 1 check or computation failure, 2 input error.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

// args excludes the program name. All reports go to out, diagnostics to err.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace dqa
