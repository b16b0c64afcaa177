#ifndef NULLREL_CLI_HPP
#define NULLREL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace nullrel {

// Command-line front end. Returns the process exit code: 0 on success, 1
// when a boolean was requested and came out false (or a constraint is
// violated), 2 on usage, parse or resolution errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nullrel

#endif
