#ifndef TROPDIFF_CLI_HPP
#define TROPDIFF_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tropdiff {

// Runs one CLI invocation (args exclude the program name) and writes
// reports to out/err. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or parse error, 3 indeterminate (a bound was too low to decide).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tropdiff

#endif
