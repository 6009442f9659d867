#include "residua/checkpoint.hpp"

#include <cstring>
#include <filesystem>

#include <json.hpp>

namespace residua {

namespace {

constexpr char kMagic[8] = {'R', 'S', 'D', 'T', 'C', 'K', 'P', '1'};

using nlohmann::json;

json meta_to_json(const CheckpointMeta& m) {
  return json{{"version", m.version},
              {"kind", m.kind},
              {"fn", to_string(m.fn)},
              {"p", m.p},
              {"x_range", {m.n_start, m.x}},
              {"filter", to_string(m.filter)},
              {"seg_len", m.seg_len}};
}

std::optional<CheckpointMeta> meta_from_json(const json& j) {
  CheckpointMeta m;
  try {
    m.version = j.at("version").get<u32>();
    m.kind = j.at("kind").get<std::string>();
    auto fn = fn_from_string(j.at("fn").get<std::string>());
    auto filter = filter_from_string(j.at("filter").get<std::string>());
    if (!fn || !filter) return std::nullopt;
    m.fn = *fn;
    m.filter = *filter;
    m.p = j.at("p").get<u32>();
    m.n_start = j.at("x_range").at(0).get<u64>();
    m.x = j.at("x_range").at(1).get<u64>();
    m.seg_len = j.at("seg_len").get<u64>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
  if (m.version != 1 || m.p == 0 || m.seg_len == 0 || m.x < m.n_start)
    return std::nullopt;
  if (m.kind != "tally" && m.kind != "jointtally") return std::nullopt;
  return m;
}

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
bool get(std::ifstream& in, T& v) {
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  return in.gcount() == sizeof v;
}

}  // namespace

u64 CheckpointMeta::segment_count() const {
  if (x < n_start) return 0;
  return (x - n_start) / seg_len + 1;
}

std::pair<u64, u64> CheckpointMeta::segment_bounds(u64 i) const {
  u64 lo = n_start + i * seg_len;
  u64 hi = std::min(x, lo + seg_len - 1);
  return {lo, hi};
}

size_t CheckpointMeta::counts_size() const {
  size_t n = p;
  return kind == "jointtally" ? n * n : n;
}

bool CheckpointMeta::matches(const CheckpointMeta& o) const {
  return version == o.version && kind == o.kind && fn == o.fn && p == o.p &&
         n_start == o.n_start && x == o.x && filter == o.filter &&
         seg_len == o.seg_len;
}

CheckpointWriter::CheckpointWriter(const std::string& path,
                                   const CheckpointMeta& meta, bool append)
    : counts_size_(meta.counts_size()) {
  if (append) {
    auto existing = load_checkpoint(path);
    require(existing && existing->meta.matches(meta),
            "checkpoint header does not match the job");
    // Truncate to the last complete record before appending.
    u64 fsize = std::filesystem::file_size(path);
    u32 hlen = 0;
    {
      std::ifstream probe(path, std::ios::binary);
      probe.seekg(8);
      get(probe, hlen);
    }
    u64 rec_bytes = 4 + sizeof(u64) * (3 + counts_size_);
    u64 valid_end = 8 + 4 + hlen;
    valid_end += (fsize - valid_end) / rec_bytes * rec_bytes;
    std::filesystem::resize_file(path, valid_end);
    out_.open(path, std::ios::binary | std::ios::app);
  } else {
    out_.open(path, std::ios::binary | std::ios::trunc);
    require(out_.good(), "cannot open checkpoint file for writing");
    out_.write(kMagic, 8);
    std::string header = meta_to_json(meta).dump();
    put(out_, static_cast<u32>(header.size()));
    out_.write(header.data(), static_cast<std::streamsize>(header.size()));
    out_.flush();
  }
  require(out_.good(), "cannot open checkpoint file for writing");
}

void CheckpointWriter::append(const CheckpointRecord& rec) {
  require(rec.counts.size() == counts_size_,
          "checkpoint record has the wrong width");
  u32 len = static_cast<u32>(sizeof(u64) * (3 + counts_size_));
  put(out_, len);
  put(out_, rec.index);
  put(out_, rec.lo);
  put(out_, rec.hi);
  out_.write(reinterpret_cast<const char*>(rec.counts.data()),
             static_cast<std::streamsize>(sizeof(u64) * rec.counts.size()));
  out_.flush();
  require(out_.good(), "checkpoint write failed");
}

std::optional<CheckpointFile> load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return std::nullopt;
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0)
    return std::nullopt;
  u32 hlen = 0;
  if (!get(in, hlen) || hlen == 0 || hlen > (1u << 20)) return std::nullopt;
  std::string header(hlen, '\0');
  in.read(header.data(), hlen);
  if (in.gcount() != static_cast<std::streamsize>(hlen)) return std::nullopt;
  json j = json::parse(header, nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  auto meta = meta_from_json(j);
  if (!meta) return std::nullopt;

  CheckpointFile file;
  file.meta = *meta;
  size_t width = meta->counts_size();
  u64 rec_bytes = sizeof(u64) * (3 + width);
  for (;;) {
    u32 len = 0;
    if (!get(in, len)) break;
    if (len != rec_bytes) break;  // torn or foreign record: stop
    CheckpointRecord rec;
    rec.counts.resize(width);
    if (!get(in, rec.index) || !get(in, rec.lo) || !get(in, rec.hi)) break;
    in.read(reinterpret_cast<char*>(rec.counts.data()),
            static_cast<std::streamsize>(sizeof(u64) * width));
    if (in.gcount() != static_cast<std::streamsize>(sizeof(u64) * width))
      break;
    if (rec.index >= meta->segment_count()) break;
    auto [lo, hi] = meta->segment_bounds(rec.index);
    if (rec.lo != lo || rec.hi != hi) break;
    file.records[rec.index] = std::move(rec);
  }
  return file;
}

}  // namespace residua
