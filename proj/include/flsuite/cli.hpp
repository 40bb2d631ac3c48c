#ifndef FLSUITE_CLI_HPP
#define FLSUITE_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace flsuite::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Runs one command line. args[0] is the program name. Subcommands:
/// coeffs, partial-sum, variation, converge, verify-kernels, run.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flsuite::cli

#endif  // FLSUITE_CLI_HPP
