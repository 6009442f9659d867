#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "residua/common.hpp"

namespace residua {

enum class JobKind : u8 {
  Tally,
  JointTally,
  CharSum,
  Jacobi,
  PrimeSum,
  Smooth,
  Predict,
  Compare,
  Verify,
};

const char* to_string(JobKind k);
std::optional<JobKind> job_kind_from_string(const std::string& s);

// One declared experiment. Values stay as strings; typed getters raise
// std::invalid_argument naming the job and key so config errors point at
// the offending line of intent, not a stack trace.
struct JobSpec {
  JobKind kind = JobKind::Tally;
  std::string name;  // report basename, unique per config
  std::map<std::string, std::string> params;

  bool has(const std::string& key) const;
  std::string get_str(const std::string& key) const;
  std::string get_str(const std::string& key, const std::string& dflt) const;
  // Accepts plain integers and exactly-integral scientific notation (1e8).
  u64 get_u64(const std::string& key) const;
  u64 get_u64(const std::string& key, u64 dflt) const;
  u32 get_u32(const std::string& key) const;
  u32 get_u32(const std::string& key, u32 dflt) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double dflt) const;
  std::vector<u64> get_u64_list(const std::string& key) const;  // comma-split
};

struct RunConfig {
  std::string output_dir = ".";
  std::optional<u32> threads;
  std::vector<JobSpec> jobs;
};

// Sectioned key = value text: globals (output_dir, threads) before the
// first section, one [kind] section per job, '#' or ';' comments. Throws
// std::invalid_argument with a line number on malformed input.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace residua
