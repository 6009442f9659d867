#include "residua/runconfig.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace residua {

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("config: " + msg);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

u64 parse_u64(const std::string& job, const std::string& key,
              const std::string& v) {
  errno = 0;
  char* end = nullptr;
  if (v.find_first_of(".eE") != std::string::npos) {
    double d = std::strtod(v.c_str(), &end);
    if (errno != 0 || end != v.c_str() + v.size())
      fail(job + ": " + key + " = '" + v + "' is not a number");
    if (d < 0 || d > 9.007199254740992e15 || d != std::floor(d))
      fail(job + ": " + key + " = '" + v + "' is not an exact nonnegative integer");
    return static_cast<u64>(d);
  }
  unsigned long long n = std::strtoull(v.c_str(), &end, 10);
  if (errno != 0 || end != v.c_str() + v.size() || v.empty() || v[0] == '-')
    fail(job + ": " + key + " = '" + v + "' is not a nonnegative integer");
  return n;
}

// Keys each job kind accepts; typos fail at parse time, not mid-run.
const std::set<std::string>& allowed_keys(JobKind k) {
  static const std::set<std::string> tally = {
      "name", "x", "fn", "p", "filter", "n_start", "checkpoint", "seg_len"};
  static const std::set<std::string> joint = {"name", "x", "p", "checkpoint",
                                              "seg_len"};
  static const std::set<std::string> charsum = {"name", "x",   "p",
                                                "chi",  "psi", "twist"};
  static const std::set<std::string> jacobi = {"name", "p", "chi", "psi",
                                               "twist"};
  static const std::set<std::string> primesum = {"name", "m", "a", "x"};
  static const std::set<std::string> smooth = {"name", "x", "y"};
  static const std::set<std::string> predict = {"name", "claim", "x", "p",
                                                "a",    "b"};
  static const std::set<std::string> compare = {"name", "claim", "x", "xs",
                                                "p",    "a",     "b"};
  static const std::set<std::string> verify = {
      "name", "relation", "x",  "p",       "a",
      "lo",   "hi",       "z",  "classes", "n"};
  switch (k) {
    case JobKind::Tally: return tally;
    case JobKind::JointTally: return joint;
    case JobKind::CharSum: return charsum;
    case JobKind::Jacobi: return jacobi;
    case JobKind::PrimeSum: return primesum;
    case JobKind::Smooth: return smooth;
    case JobKind::Predict: return predict;
    case JobKind::Compare: return compare;
    case JobKind::Verify: return verify;
  }
  return tally;
}

}  // namespace

const char* to_string(JobKind k) {
  switch (k) {
    case JobKind::Tally: return "tally";
    case JobKind::JointTally: return "jointtally";
    case JobKind::CharSum: return "charsum";
    case JobKind::Jacobi: return "jacobi";
    case JobKind::PrimeSum: return "primesum";
    case JobKind::Smooth: return "smooth";
    case JobKind::Predict: return "predict";
    case JobKind::Compare: return "compare";
    case JobKind::Verify: return "verify";
  }
  return "?";
}

std::optional<JobKind> job_kind_from_string(const std::string& s) {
  for (JobKind k :
       {JobKind::Tally, JobKind::JointTally, JobKind::CharSum, JobKind::Jacobi,
        JobKind::PrimeSum, JobKind::Smooth, JobKind::Predict, JobKind::Compare,
        JobKind::Verify})
    if (s == to_string(k)) return k;
  return std::nullopt;
}

bool JobSpec::has(const std::string& key) const { return params.count(key) > 0; }

std::string JobSpec::get_str(const std::string& key) const {
  auto it = params.find(key);
  if (it == params.end()) fail(name + ": missing required key '" + key + "'");
  return it->second;
}

std::string JobSpec::get_str(const std::string& key,
                             const std::string& dflt) const {
  auto it = params.find(key);
  return it == params.end() ? dflt : it->second;
}

u64 JobSpec::get_u64(const std::string& key) const {
  return parse_u64(name, key, get_str(key));
}

u64 JobSpec::get_u64(const std::string& key, u64 dflt) const {
  return has(key) ? get_u64(key) : dflt;
}

u32 JobSpec::get_u32(const std::string& key) const {
  u64 v = get_u64(key);
  if (v > 0xffffffffull) fail(name + ": " + key + " out of 32-bit range");
  return static_cast<u32>(v);
}

u32 JobSpec::get_u32(const std::string& key, u32 dflt) const {
  return has(key) ? get_u32(key) : dflt;
}

double JobSpec::get_double(const std::string& key) const {
  std::string v = get_str(key);
  errno = 0;
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (errno != 0 || v.empty() || end != v.c_str() + v.size())
    fail(name + ": " + key + " = '" + v + "' is not a number");
  return d;
}

double JobSpec::get_double(const std::string& key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

std::vector<u64> JobSpec::get_u64_list(const std::string& key) const {
  std::string v = get_str(key);
  std::vector<u64> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_u64(name, key, item));
  }
  if (out.empty()) fail(name + ": " + key + " lists no values");
  return out;
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  JobSpec* current = nullptr;
  std::map<JobKind, int> ordinals;
  std::set<std::string> names;

  auto fail_at = [&](const std::string& msg) {
    fail("line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    size_t cut = line.find_first_of("#;");
    if (cut != std::string::npos) line = line.substr(0, cut);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail_at("unterminated section header");
      std::string kind_str = trim(line.substr(1, line.size() - 2));
      auto kind = job_kind_from_string(kind_str);
      if (!kind) fail_at("unknown job kind '" + kind_str + "'");
      JobSpec job;
      job.kind = *kind;
      job.name = std::string(to_string(*kind)) + "-" +
                 std::to_string(++ordinals[*kind]);
      cfg.jobs.push_back(std::move(job));
      current = &cfg.jobs.back();
      continue;
    }

    size_t eq = line.find('=');
    if (eq == std::string::npos) fail_at("expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) fail_at("empty key or value");

    if (current == nullptr) {
      if (key == "output_dir") {
        cfg.output_dir = value;
      } else if (key == "threads") {
        cfg.threads = static_cast<u32>(parse_u64("globals", key, value));
      } else {
        fail_at("unknown global key '" + key + "'");
      }
      continue;
    }

    if (allowed_keys(current->kind).count(key) == 0)
      fail_at("key '" + key + "' not accepted by [" +
              to_string(current->kind) + "]");
    if (key == "name") {
      current->name = value;
    } else if (!current->params.emplace(key, value).second) {
      fail_at("duplicate key '" + key + "'");
    }
  }

  for (const JobSpec& j : cfg.jobs)
    if (!names.insert(j.name).second)
      fail("duplicate job name '" + j.name + "'");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) fail("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace residua
