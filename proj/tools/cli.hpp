#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tubealg::cli {

/// Exit codes: 0 success or pass, 1 verification failure, 2 input error.
int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err);

}  // namespace tubealg::cli
