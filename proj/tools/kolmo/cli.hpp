#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kolmo::cli {

/// args excludes the program name. Exit codes: 0 ok, 1 verification failure, 2 usage or config error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kolmo::cli
