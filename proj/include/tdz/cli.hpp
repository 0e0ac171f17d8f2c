// Command-line front end.  Exit codes: 0 success, 2 invalid input,
// 3 enumeration cap exceeded, 4 cross-check mismatch.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tdz {

enum ExitCode : int { kOk = 0, kInvalid = 2, kCap = 3, kMismatch = 4 };

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdz
