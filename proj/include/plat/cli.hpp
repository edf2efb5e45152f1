#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace plat {

/// Exit codes: 0 success, 1 theorem-level violation or unexpected failure,
/// 2 usage, configuration or build error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plat
