#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "residua/common.hpp"
#include "residua/multfun_sieve.hpp"
#include "residua/residue_tally.hpp"

namespace residua {

// On-disk layout: 8-byte magic, u32 header length, JSON header
// {version, kind, fn, p, x_range, filter, seg_len}, then length-prefixed
// binary records (u32 length, u64 index/lo/hi, u64 counts[]). Records are
// flushed one at a time so an interrupted run leaves every completed
// segment readable; a torn trailing record is dropped on load.
struct CheckpointMeta {
  u32 version = 1;
  std::string kind;  // "tally" or "jointtally"
  MultFn fn = MultFn::Phi;
  u32 p = 0;
  u64 n_start = 1, x = 0;  // inclusive scan range
  TallyFilter filter = TallyFilter::All;
  u64 seg_len = 0;

  u64 segment_count() const;
  // Inclusive bounds of segment i.
  std::pair<u64, u64> segment_bounds(u64 i) const;
  size_t counts_size() const;  // p for tally, p*p for jointtally
  bool matches(const CheckpointMeta& other) const;
};

struct CheckpointRecord {
  u64 index = 0, lo = 0, hi = 0;  // inclusive n-range covered
  std::vector<u64> counts;
};

struct CheckpointFile {
  CheckpointMeta meta;
  std::map<u64, CheckpointRecord> records;  // merged by segment index
};

class CheckpointWriter {
 public:
  // Truncates and writes a fresh header, or reopens for append when the
  // existing file's header matches `meta` (caller loads records first).
  CheckpointWriter(const std::string& path, const CheckpointMeta& meta,
                   bool append);
  void append(const CheckpointRecord& rec);

 private:
  std::ofstream out_;
  size_t counts_size_;
};

// nullopt when the file is missing or its header is unreadable.
std::optional<CheckpointFile> load_checkpoint(const std::string& path);

}  // namespace residua
