#include "residua/jobs.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "residua/asymptotics.hpp"
#include "residua/characters.hpp"
#include "residua/checkpoint.hpp"
#include "residua/multfun_sieve.hpp"
#include "residua/parallel.hpp"
#include "residua/prime_ap.hpp"
#include "residua/primes.hpp"
#include "residua/residue_tally.hpp"
#include "residua/verification.hpp"

namespace residua {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) {
  throw std::invalid_argument(msg);
}

// json orders keys alphabetically and prints shortest-roundtrip doubles, so
// reports are byte-stable for bit-identical inputs.
std::string write_report(const JobOptions& opts, const std::string& name,
                         const char* ext, const std::string& body) {
  fs::create_directories(opts.output_dir);
  fs::path path = fs::path(opts.output_dir) / (name + ext);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), "cannot open report file for writing");
  out << body;
  out.flush();
  require(out.good(), "report write failed");
  return path.string();
}

json cplx_json(cplx z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

std::string fixed17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

fs::path checkpoint_path(const JobSpec& job, const JobOptions& opts) {
  fs::path ck(job.get_str("checkpoint"));
  if (ck.is_relative()) ck = fs::path(opts.output_dir) / ck;
  if (!ck.parent_path().empty()) fs::create_directories(ck.parent_path());
  return ck;
}

// Streams missing segments into the checkpoint and folds all records in
// index order, so the result is independent of which run computed what.
std::vector<u64> checkpointed_counts(
    const CheckpointMeta& meta, const fs::path& path,
    const std::function<std::vector<u64>(u64 lo, u64 hi)>& compute) {
  auto existing = load_checkpoint(path.string());
  if (existing)
    require(existing->meta.matches(meta),
            "checkpoint '" + path.string() + "' belongs to a different job");
  CheckpointWriter writer(path.string(), meta, existing.has_value());

  std::vector<u64> total(meta.counts_size(), 0);
  for (u64 i = 0; i < meta.segment_count(); ++i) {
    auto [lo, hi] = meta.segment_bounds(i);
    if (existing && existing->records.count(i)) {
      const auto& counts = existing->records.at(i).counts;
      for (size_t k = 0; k < total.size(); ++k) total[k] += counts[k];
    } else {
      CheckpointRecord rec{i, lo, hi, compute(lo, hi)};
      writer.append(rec);
      for (size_t k = 0; k < total.size(); ++k) total[k] += rec.counts[k];
    }
  }
  return total;
}

JobResult run_tally(const JobSpec& job, const JobOptions& opts) {
  u64 x = job.get_u64("x");
  auto fn = fn_from_string(job.get_str("fn", "phi"));
  if (!fn) bad(job.name + ": unknown fn '" + job.get_str("fn") + "'");
  u32 p = job.get_u32("p");
  auto filter = filter_from_string(job.get_str("filter", "all"));
  if (!filter) bad(job.name + ": unknown filter '" + job.get_str("filter") + "'");
  u64 n_start = job.get_u64("n_start", default_n_start(*filter));

  TallyTable table;
  if (job.has("checkpoint")) {
    require(x >= p && x >= n_start && n_start >= 1, "tally: bad range");
    CheckpointMeta meta;
    meta.kind = "tally";
    meta.fn = *fn;
    meta.p = p;
    meta.n_start = n_start;
    meta.x = x;
    meta.filter = *filter;
    meta.seg_len = std::max<u64>(job.get_u64("seg_len", 10'000'000), p);
    table.fn = *fn;
    table.p = p;
    table.filter = *filter;
    table.n_start = n_start;
    table.x = x;
    table.counts = checkpointed_counts(
        meta, checkpoint_path(job, opts), [&](u64 lo, u64 hi) {
          return tally(hi, *fn, p, *filter, lo).counts;
        });
  } else {
    table = tally(x, *fn, p, *filter, n_start);
  }

  std::ostringstream csv;
  csv << "# tally fn=" << to_string(*fn) << " p=" << p << " filter="
      << to_string(*filter) << " n_start=" << n_start << " x=" << x
      << " total=" << table.total() << "\n";
  csv << "residue,count\n";
  for (u32 r = 0; r < p; ++r) csv << r << "," << table.counts[r] << "\n";

  JobResult res;
  res.report_path = write_report(opts, job.name, ".csv", csv.str());
  res.summary = "total=" + std::to_string(table.total());
  return res;
}

JobResult run_jointtally(const JobSpec& job, const JobOptions& opts) {
  u64 x = job.get_u64("x");
  u32 p = job.get_u32("p");

  std::vector<u64> counts;
  if (job.has("checkpoint")) {
    require(x >= 1, "jointtally: x must be >= 1");
    CheckpointMeta meta;
    meta.kind = "jointtally";
    meta.fn = MultFn::Sigma;
    meta.p = p;
    meta.n_start = 1;
    meta.x = x;
    meta.filter = TallyFilter::All;
    meta.seg_len = std::max<u64>(job.get_u64("seg_len", 10'000'000), p);
    counts = checkpointed_counts(
        meta, checkpoint_path(job, opts), [&](u64 lo, u64 hi) {
          return detail::joint_counts_range(lo, hi, p);
        });
  } else {
    counts = joint_tally(x, p).counts;
  }

  u64 total = 0;
  for (u64 c : counts) total += c;
  std::ostringstream csv;
  csv << "# jointtally p=" << p << " x=" << x << " total=" << total << "\n";
  csv << "n_residue,sigma_residue,count\n";
  for (u32 r = 0; r < p; ++r)
    for (u32 s = 0; s < p; ++s)
      csv << r << "," << s << "," << counts[static_cast<size_t>(r) * p + s]
          << "\n";

  JobResult res;
  res.report_path = write_report(opts, job.name, ".csv", csv.str());
  res.summary = "total=" + std::to_string(total);
  return res;
}

JobResult run_charsum(const JobSpec& job, const JobOptions& opts) {
  u64 x = job.get_u64("x");
  u32 p = job.get_u32("p");
  std::string twist = job.get_str("twist", "sigma");
  u32 chi = job.get_u32("chi");
  CharacterTable t = build_character_table(p);
  require(chi < t.order, "charsum: chi index out of range");

  json rep;
  rep["kind"] = "charsum";
  rep["twist"] = twist;
  rep["x"] = x;
  rep["p"] = p;
  rep["chi"] = chi;
  cplx sum;
  if (twist == "sigma") {
    u32 psi = job.get_u32("psi");
    require(psi < t.order, "charsum: psi index out of range");
    rep["psi"] = psi;
    sum = char_sum(x, t, chi, psi);
  } else if (twist == "phi") {
    sum = char_sum_phi(x, t, chi);
  } else {
    bad(job.name + ": twist must be 'sigma' or 'phi'");
  }
  rep["sum"] = cplx_json(sum);
  rep["abs"] = std::abs(sum);
  rep["abs_over_x"] = std::abs(sum) / static_cast<double>(x);

  JobResult res;
  res.report_path = write_report(opts, job.name, ".json", rep.dump(2) + "\n");
  res.summary = "abs=" + fixed17(std::abs(sum));
  return res;
}

JobResult run_jacobi(const JobSpec& job, const JobOptions& opts) {
  u32 p = job.get_u32("p");
  std::string twist = job.get_str("twist", "sigma");
  u32 chi = job.get_u32("chi");
  CharacterTable t = build_character_table(p);
  require(chi < t.order, "jacobi: chi index out of range");

  CoefficientVector c;
  json rep;
  if (twist == "sigma") {
    u32 psi = job.get_u32("psi");
    require(psi < t.order, "jacobi: psi index out of range");
    c = sigma_twist_coefficients(t, chi, psi);
    rep["psi"] = psi;
  } else if (twist == "phi") {
    c = phi_twist_coefficients(t, chi);
  } else {
    bad(job.name + ": twist must be 'sigma' or 'phi'");
  }

  const double bound = std::sqrt(static_cast<double>(p)) / (p - 1);
  double max_nonexc = 0;
  for (u32 r = 0; r < t.order; ++r) {
    if (c.exceptional && *c.exceptional == r) continue;
    max_nonexc = std::max(max_nonexc, std::abs(c.a[r]));
  }
  double residual = verify_reconstruction(c, t);
  bool within = max_nonexc <= bound + 1e-12;
  bool exc_ok = !c.exceptional || std::abs(c.a[*c.exceptional]) < 1.0;
  bool recon_ok = residual <= 1e-9 * p;

  rep["kind"] = "jacobi";
  rep["twist"] = twist;
  rep["p"] = p;
  rep["chi"] = chi;
  rep["bound"] = bound;
  rep["max_nonexceptional"] = max_nonexc;
  if (c.exceptional) {
    rep["exceptional_index"] = *c.exceptional;
    rep["exceptional_value"] = cplx_json(c.a[*c.exceptional]);
  } else {
    rep["exceptional_index"] = nullptr;
  }
  rep["reconstruction_residual"] = residual;
  rep["within_bound"] = within;
  rep["exceptional_within_unit"] = exc_ok;
  rep["reconstruction_ok"] = recon_ok;
  json arr = json::array();
  for (u32 r = 0; r < t.order; ++r) {
    json e = cplx_json(c.a[r]);
    e["rho"] = r;
    arr.push_back(std::move(e));
  }
  rep["coefficients"] = std::move(arr);

  JobResult res;
  res.pass = within && exc_ok && recon_ok;
  res.report_path = write_report(opts, job.name, ".json", rep.dump(2) + "\n");
  res.summary = "max|a|=" + fixed17(max_nonexc) + " bound=" + fixed17(bound);
  return res;
}

JobResult run_primesum(const JobSpec& job, const JobOptions& opts) {
  u64 m = job.get_u64("m");
  u64 a = job.get_u64("a");
  double X = job.get_double("x");
  APReciprocalSum s = reciprocal_sum(X, m, a);

  json rep;
  rep["kind"] = "primesum";
  rep["m"] = s.m;
  rep["a"] = s.a;
  rep["X"] = s.X;
  rep["sum"] = s.sum;
  rep["least_prime"] = s.least_prime;
  rep["predicted"] = s.predicted;
  rep["residual"] = s.residual;
  rep["residual_scale"] =
      std::log(2.0 * static_cast<double>(m)) / static_cast<double>(euler_phi_u64(m));

  JobResult res;
  res.report_path = write_report(opts, job.name, ".json", rep.dump(2) + "\n");
  res.summary = "residual=" + fixed17(s.residual);
  return res;
}

JobResult run_smooth(const JobSpec& job, const JobOptions& opts) {
  u64 x = job.get_u64("x");
  u64 y = job.get_u64("y");
  SmoothQuery q;
  q.X = static_cast<double>(x);
  q.Y = static_cast<double>(y);
  u64 count = count_smooth(q);

  json rep;
  rep["kind"] = "smooth";
  rep["X"] = x;
  rep["Y"] = y;
  rep["count"] = count;
  std::string summary = "count=" + std::to_string(count);
  if (q.Y > 1 && q.u() > 1) {
    rep["u"] = q.u();
    double mt = smooth_main_term(q);
    rep["main_term"] = mt;
    rep["ratio"] = static_cast<double>(count) / mt;
  }

  JobResult res;
  res.report_path = write_report(opts, job.name, ".json", rep.dump(2) + "\n");
  res.summary = std::move(summary);
  return res;
}

std::optional<u32> opt_class(const JobSpec& job, const char* key) {
  if (!job.has(key)) return std::nullopt;
  return job.get_u32(key);
}

JobResult run_predict(const JobSpec& job, const JobOptions& opts) {
  auto claim = claim_from_string(job.get_str("claim"));
  if (!claim) bad(job.name + ": unknown claim '" + job.get_str("claim") + "'");
  double x = job.get_double("x");
  u32 p = job.get_u32("p");
  PredictionRecord rec =
      main_term(*claim, x, p, opt_class(job, "a"), opt_class(job, "b"));

  json rep;
  rep["kind"] = "predict";
  rep["claim"] = to_string(rec.claim);
  rep["x"] = rec.x;
  rep["p"] = rec.p;
  if (rec.a) rep["a"] = *rec.a;
  if (rec.b) rep["b"] = *rec.b;
  rep["main_term"] = rec.main_term;
  if (x > 16.0) {
    HeuristicThresholds h = thresholds(x, p);
    rep["thresholds"] = json{{"kappa", h.kappa},
                             {"Lx", h.Lx},
                             {"regime_large", h.regime_large},
                             {"s_failure_threshold", h.s_failure_threshold}};
  }

  JobResult res;
  res.report_path = write_report(opts, job.name, ".json", rep.dump(2) + "\n");
  res.summary = "main_term=" + fixed17(rec.main_term);
  return res;
}

PredictionRecord compare_at(ClaimId claim, u64 x, u32 p, std::optional<u32> a,
                            std::optional<u32> b) {
  PredictionRecord rec = main_term(claim, static_cast<double>(x), p, a, b);
  switch (claim) {
    case ClaimId::Thm11:
    case ClaimId::Thm12:
    case ClaimId::Lem31:
    case ClaimId::Dp98C3:
      return compare(rec, tally(x, MultFn::Phi, p, TallyFilter::All, 1));
    case ClaimId::Thm13:
      return compare(rec, tally(x, MultFn::Aliquot, p, TallyFilter::CompositeOnly));
    case ClaimId::Lem41:
    case ClaimId::Lem52:
      return compare(rec, joint_tally(x, p));
  }
  bad("unreachable claim");
}

JobResult run_compare(const JobSpec& job, const JobOptions& opts) {
  auto claim = claim_from_string(job.get_str("claim"));
  if (!claim) bad(job.name + ": unknown claim '" + job.get_str("claim") + "'");
  u32 p = job.get_u32("p");
  std::vector<u64> xs = job.has("xs") ? job.get_u64_list("xs")
                                      : std::vector<u64>{job.get_u64("x")};
  auto a = opt_class(job, "a");
  auto b = opt_class(job, "b");

  std::ostringstream csv, plot;
  csv << comparison_csv_header() << "\n";
  plot << "x,ratio\n";
  double last_ratio = 0;
  for (u64 x : xs) {
    PredictionRecord rec = compare_at(*claim, x, p, a, b);
    csv << comparison_csv_row(rec) << "\n";
    last_ratio = rec.ratio.value_or(0.0);
    char row[64];
    std::snprintf(row, sizeof row, "%llu,%.10e\n",
                  static_cast<unsigned long long>(x), last_ratio);
    plot << row;
  }

  JobResult res;
  res.report_path = write_report(opts, job.name, ".csv", csv.str());
  if (opts.plot_data)
    write_report(opts, job.name + "-plot", ".csv", plot.str());
  res.summary = "ratio=" + fixed17(last_ratio);
  return res;
}

std::map<u32, u32> parse_classes(const JobSpec& job, u32 z) {
  std::map<u32, u32> classes;
  std::string v = job.get_str("classes");
  if (v == "zeros") {
    for (u32 q : primes_up_to(z)) classes[q] = 0;
    return classes;
  }
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t colon = item.find(':');
    if (colon == std::string::npos)
      bad(job.name + ": classes entries must be 'prime:residue'");
    classes[static_cast<u32>(std::stoul(item.substr(0, colon)))] =
        static_cast<u32>(std::stoul(item.substr(colon + 1)));
  }
  return classes;
}

JobResult run_verify(const JobSpec& job, const JobOptions& opts) {
  std::string relation = job.get_str("relation");
  json rep;
  rep["kind"] = "verify";
  rep["relation"] = relation;
  JobResult res;

  if (relation == "fundamental-phi" || relation == "fundamental-s") {
    u64 x = job.get_u64("x");
    u32 p = job.get_u32("p");
    u32 a = job.get_u32("a");
    ResidualReport r = relation == "fundamental-phi"
                           ? verify_fundamental_phi(x, p, a)
                           : verify_fundamental_s(x, p, a);
    rep["x"] = r.x;
    rep["p"] = r.p;
    rep["a"] = r.a;
    rep["lhs"] = r.lhs;
    rep["rhs"] = r.rhs;
    rep["pairs"] = r.pairs;
    rep["residual"] = r.residual;
    rep["tolerance"] = r.tolerance;
    rep["pass"] = r.pass;
    res.pass = r.pass;
    res.summary = "residual=" + fixed17(r.residual);
  } else if (relation == "uvsplit") {
    u64 x = job.get_u64("x");
    u32 p = job.get_u32("p");
    JointTallyTable j = joint_tally(x, p);
    TallyTable direct = tally(x, MultFn::Aliquot, p, TallyFilter::All, 1);
    json arr = json::array();
    bool all_match = true;
    for (u32 a = 0; a < p; ++a) {
      u64 assembled = assemble_uvsplit(j, a);
      bool match = assembled == direct.counts[a];
      all_match = all_match && match;
      arr.push_back(json{{"a", a},
                         {"assembled", assembled},
                         {"direct", direct.counts[a]},
                         {"match", match}});
    }
    rep["x"] = x;
    rep["p"] = p;
    rep["classes"] = std::move(arr);
    rep["pass"] = all_match;
    res.pass = all_match;
    res.summary = all_match ? "exact" : "MISMATCH";
  } else if (relation == "sieve") {
    u64 lo = job.get_u64("lo");
    u64 hi = job.get_u64("hi");
    u32 z = job.get_u32("z");
    SieveExperimentReport r = sieve_experiment(lo, hi, z, parse_classes(job, z));
    rep["lo"] = r.lo;
    rep["hi"] = r.hi;
    rep["z"] = r.z;
    rep["count"] = r.count;
    rep["expected"] = r.expected;
    rep["rel_deviation"] = r.rel_deviation;
    rep["error_scale"] = r.error_scale;
    rep["pass"] = r.within_band;
    res.pass = r.within_band;
    res.summary = "rel_deviation=" + fixed17(r.rel_deviation);
  } else if (relation == "squarefull") {
    u64 n = job.get_u64("n");
    u32 p = job.get_u32("p");
    auto [A, B] = squarefull_decomposition(n, p);
    rep["n"] = n;
    rep["p"] = p;
    rep["A"] = A;
    rep["B"] = B;
    rep["pass"] = A * B == n;
    res.pass = A * B == n;
    res.summary = "A=" + std::to_string(A) + " B=" + std::to_string(B);
  } else {
    bad(job.name + ": unknown relation '" + relation + "'");
  }

  res.report_path = write_report(opts, job.name, ".json", rep.dump(2) + "\n");
  return res;
}

}  // namespace

JobResult execute_job(const JobSpec& job, const JobOptions& opts_in) {
  JobOptions opts = opts_in;
  if (opts.output_dir.empty()) opts.output_dir = ".";
  if (opts.threads) set_thread_count(*opts.threads);
  JobResult res;
  switch (job.kind) {
    case JobKind::Tally: res = run_tally(job, opts); break;
    case JobKind::JointTally: res = run_jointtally(job, opts); break;
    case JobKind::CharSum: res = run_charsum(job, opts); break;
    case JobKind::Jacobi: res = run_jacobi(job, opts); break;
    case JobKind::PrimeSum: res = run_primesum(job, opts); break;
    case JobKind::Smooth: res = run_smooth(job, opts); break;
    case JobKind::Predict: res = run_predict(job, opts); break;
    case JobKind::Compare: res = run_compare(job, opts); break;
    case JobKind::Verify: res = run_verify(job, opts); break;
  }
  res.name = job.name;
  res.kind = job.kind;
  return res;
}

int run_config(const RunConfig& cfg, const JobOptions& opts_in,
               std::ostream& log) {
  JobOptions opts = opts_in;
  if (opts.output_dir.empty())
    opts.output_dir = cfg.output_dir.empty() ? "." : cfg.output_dir;
  if (opts.threads)
    set_thread_count(*opts.threads);
  else if (cfg.threads)
    set_thread_count(*cfg.threads);

  int status = 0;
  for (const JobSpec& job : cfg.jobs) {
    JobResult r = execute_job(job, opts);
    log << (r.pass ? "ok   " : "FAIL ") << r.name << "  " << r.summary
        << "  -> " << r.report_path << "\n";
    if (!r.pass) status = 2;
  }
  return status;
}

}  // namespace residua
