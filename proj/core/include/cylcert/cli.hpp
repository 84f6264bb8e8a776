#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cylcert {

/// Command-line driver. Exit codes: 0 all Pass, 1 any Fail/Inconclusive,
/// 2 usage or parse error.
int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace cylcert
