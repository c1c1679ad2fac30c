#ifndef RISKBENCH_CLI_COMMANDS_H_
#define RISKBENCH_CLI_COMMANDS_H_

#include <string>
#include <vector>

#include "riskbench/cli/config.h"
#include "riskbench/util/io.h"

namespace riskbench::cli {

struct CommandResult {
  OrderedJson result = OrderedJson::object();
  std::vector<std::string> artifacts;  // paths written, in order
  int exit_code = 0;
};

// Each command reads its inputs from cfg.paths, writes artifacts under
// cfg.paths.out_dir and returns the report body. Input errors carry the
// offending file name.
CommandResult Ingest(const RunConfig& cfg);
CommandResult Features(const RunConfig& cfg);
CommandResult Aggregate(const RunConfig& cfg);
CommandResult Train(const RunConfig& cfg);
CommandResult Simulate(const RunConfig& cfg);
CommandResult EvalStream(const RunConfig& cfg);
CommandResult EvalRank(const RunConfig& cfg);
CommandResult EvalPilot(const RunConfig& cfg);
// Exits 2 after writing its report when any transcript fails validation.
CommandResult AuditTranscripts(const RunConfig& cfg);
CommandResult Submit(const RunConfig& cfg);
CommandResult Stats(const RunConfig& cfg);

}  // namespace riskbench::cli

#endif  // RISKBENCH_CLI_COMMANDS_H_
