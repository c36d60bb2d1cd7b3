#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fpnf {

// Exit codes: 0 success, 1 malformed input, 2 precondition violation,
// 3 internal consistency failure. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fpnf
