#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace statemine::cli {

// Runs the statemine command line. Exit codes: 0 success, 1 usage error,
// 2 parse/validation error, 3 extraction terminated because no State class
// exists.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace statemine::cli
