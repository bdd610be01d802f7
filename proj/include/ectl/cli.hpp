#ifndef ECTL_CLI_HPP
#define ECTL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace ectl {

// Exit codes: 0 success, 1 precondition error, 2 internal error, 64 usage.
constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 1;
constexpr int kExitInternal = 2;
constexpr int kExitUsage = 64;

// Subcommands: simulate, halve, descent, linctrl, reach, compare, verify.
// Config precedence: flags > --config file > built-in defaults.
int run_experiment(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ectl

#endif
