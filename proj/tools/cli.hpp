#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace weyl {

/// Exit codes: 0 success, 2 usage error, 3 domain error, 4 search exhausted
/// (including Unknown under --require-verdict). args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weyl
