#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "run_config.hpp"

namespace twisted::cli {

struct CommandOutcome {
  bool passed = true;  // false: a numerical validation failed (exit code 3)
  std::vector<std::filesystem::path> files;
};

// Each command writes into cfg.out (created if needed), echoes the effective
// configuration there and prints a short summary to `log`.
CommandOutcome cmd_figure1(const RunConfig& cfg, std::ostream& log);
CommandOutcome cmd_figure2(const RunConfig& cfg, std::ostream& log);
CommandOutcome cmd_verify(const RunConfig& cfg, std::ostream& log);
CommandOutcome cmd_observables(const RunConfig& cfg, std::ostream& log);
CommandOutcome cmd_penetrate(const RunConfig& cfg, std::ostream& log);
CommandOutcome cmd_propagate(const RunConfig& cfg, std::ostream& log);

// Full command line: parses, dispatches, maps errors to exit codes
// (0 ok, 1 I/O, 2 configuration, 3 numerical validation).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace twisted::cli
