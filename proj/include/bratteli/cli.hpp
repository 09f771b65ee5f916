#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bratteli {

// Exit statuses: 0 success, 1 verification failure, 2 input or validation
// error, 3 I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bratteli
