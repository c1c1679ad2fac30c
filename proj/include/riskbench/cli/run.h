#ifndef RISKBENCH_CLI_RUN_H_
#define RISKBENCH_CLI_RUN_H_

#include <ostream>

namespace riskbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Parses argv, runs one subcommand and writes <out>/<command>_report.json.
// Returns 0 on success, 1 for usage and configuration errors, 2 for data
// errors.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Applies RISKBENCH_LOG (trace, debug, info, warn, error, off) to the
// default logger, which writes to stderr.
void ConfigureLogging();

}  // namespace riskbench::cli

#endif  // RISKBENCH_CLI_RUN_H_
