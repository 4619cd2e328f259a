#pragma once

#include <iosfwd>

#include "cli/config.hpp"

namespace tmsort::cli {

enum ExitCode { kOk = 0, kOther = 1, kConfig = 2, kNumeric = 3, kAcceptance = 4 };

// Each command writes its primary artifact to `out` and returns an exit code.
int cmd_sort_demo(const RunConfig& c, std::ostream& out);
int cmd_sweep_ptot(const RunConfig& c, std::ostream& out);
int cmd_sweep_parity(const RunConfig& c, std::ostream& out);
// Also writes the JSON sidecar next to c.output (or to `sidecar` when writing to stdout).
int cmd_jta_map(const RunConfig& c, std::ostream& out, std::ostream* sidecar);
int cmd_schmidt(const RunConfig& c, std::ostream& out);
int cmd_design_source(const RunConfig& c, std::ostream& out);
int cmd_validate(const RunConfig& c, std::ostream& out, const std::vector<int>& only = {});

// Parses argv, runs one subcommand, maps exceptions to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tmsort::cli
