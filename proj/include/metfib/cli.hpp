#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metfib {

// Full command-line surface. args excludes the program name. Reports go to
// out, errors to err. Returns 0 on success, 1 on validation failure, 2 on
// usage or parse errors.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace metfib
