#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "residua/common.hpp"
#include "residua/runconfig.hpp"

namespace residua {

struct JobResult {
  std::string name;
  JobKind kind = JobKind::Tally;
  bool pass = true;  // false only for failed verification-style jobs
  std::string report_path;
  std::string summary;  // one log line
};

struct JobOptions {
  std::string output_dir;             // empty: config decides, falling back to "."
  bool plot_data = false;             // emit (x, ratio) series for compare
  std::optional<u32> threads;         // overrides config and environment
};

// Runs one job, writing its report under output_dir. Throws on malformed
// parameters; verification failures return pass = false instead.
JobResult execute_job(const JobSpec& job, const JobOptions& opts);

// Runs every job in declaration order, logging one line each.
// Exit status: 0 all passed, 2 when any verification failed.
int run_config(const RunConfig& cfg, const JobOptions& opts, std::ostream& log);

}  // namespace residua
