// Command-line surface: single-experiment subcommands plus a batch `run`
// mode driven by a config file. Exit codes: 0 success, 1 usage error,
// 2 verification failure, 3 resource/overflow.
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "residua/common.hpp"
#include "residua/jobs.hpp"
#include "residua/multfun_sieve.hpp"
#include "residua/parallel.hpp"
#include "residua/runconfig.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitResource = 3;

struct Cli {
  std::string out_dir;
  bool plot_data = false;
  unsigned threads = 0;  // 0: keep RESIDUA_THREADS / hardware default

  // Raw string params per subcommand; typed parsing happens in JobSpec so
  // values like 1e8 work the same here and in config files.
  std::map<std::string, std::string> params;
  std::vector<std::string> xs;  // repeatable --x for compare
  std::string name;

  // sieve-only
  std::string sieve_fn = "phi";
  std::string sieve_lo = "1", sieve_hi, sieve_mod;

  // run-only
  std::string config_path;
};

void bind_param(CLI::App* cmd, Cli& cli, const std::string& key,
                const std::string& help, bool required = false) {
  auto* opt = cmd->add_option_function<std::string>(
      "--" + key, [&cli, key](const std::string& v) { cli.params[key] = v; },
      help);
  if (required) opt->required();
}

residua::JobSpec make_spec(residua::JobKind kind, const Cli& cli) {
  residua::JobSpec spec;
  spec.kind = kind;
  spec.name = cli.name.empty() ? residua::to_string(kind) : cli.name;
  spec.params = cli.params;
  return spec;
}

int report_result(const residua::JobResult& r) {
  std::cout << (r.pass ? "ok   " : "FAIL ") << r.name << "  " << r.summary
            << "  -> " << r.report_path << "\n";
  return r.pass ? kExitOk : kExitVerifyFail;
}

int run_sieve(const Cli& cli) {
  residua::JobSpec probe;  // reuse its numeric parsing
  probe.name = "sieve";
  probe.params = {{"lo", cli.sieve_lo}, {"hi", cli.sieve_hi}};
  residua::u64 lo = probe.get_u64("lo");
  residua::u64 hi = probe.get_u64("hi");
  residua::require(hi > lo, "sieve: need hi > lo");
  residua::require(hi - lo <= 1'000'000, "sieve: dump at most 1e6 values");

  if (cli.sieve_fn == "lpf") {
    auto lpf = residua::largest_prime_factor_range(lo, hi);
    std::printf("n,largest_prime_factor\n");
    for (residua::u64 n = lo; n < hi; ++n)
      std::printf("%llu,%llu\n", static_cast<unsigned long long>(n),
                  static_cast<unsigned long long>(lpf[n - lo]));
    return kExitOk;
  }
  auto fn = residua::fn_from_string(cli.sieve_fn);
  residua::require(fn.has_value(), "sieve: fn must be phi, sigma, aliquot or lpf");
  residua::SieveSegment seg;
  if (!cli.sieve_mod.empty()) {
    probe.params["mod"] = cli.sieve_mod;
    seg = residua::sieve_range(lo, hi, *fn, probe.get_u32("mod"));
    std::printf("n,%s_mod_%s\n", residua::to_string(*fn),
                cli.sieve_mod.c_str());
  } else {
    seg = residua::sieve_range(lo, hi, *fn);
    std::printf("n,%s\n", residua::to_string(*fn));
  }
  for (residua::u64 n = lo; n < hi; ++n)
    std::printf("%llu,%llu\n", static_cast<unsigned long long>(n),
                static_cast<unsigned long long>(seg.value(n)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational laboratory for multiplicative-function"
               " distributions in residue classes"};
  app.set_version_flag("--version", "1.0.0");
  app.require_subcommand(1);

  Cli cli;
  app.add_option("--threads", cli.threads,
                 "worker threads (overrides RESIDUA_THREADS; 0 = default)");
  app.add_option("--out", cli.out_dir, "directory for report files");
  app.add_flag("--plot-data", cli.plot_data,
               "also emit (x, ratio) series for compare jobs");

  auto* sieve = app.add_subcommand("sieve", "dump exact values over a range");
  sieve->add_option("--lo", cli.sieve_lo, "range start (inclusive)");
  sieve->add_option("--hi", cli.sieve_hi, "range end (exclusive)")->required();
  sieve->add_option("--fn", cli.sieve_fn, "phi | sigma | aliquot | lpf");
  sieve->add_option("--mod", cli.sieve_mod, "reduce values mod this prime");

  auto add_named = [&](const char* kind, const char* help) {
    auto* cmd = app.add_subcommand(kind, help);
    cmd->add_option("--name", cli.name, "report basename");
    return cmd;
  };

  auto* tally = add_named("tally", "residue-class counts of phi/sigma/s");
  bind_param(tally, cli, "x", "count n <= x", true);
  bind_param(tally, cli, "p", "odd prime modulus", true);
  bind_param(tally, cli, "fn", "phi | sigma | aliquot (default phi)");
  bind_param(tally, cli, "filter", "all | composite | prime (default all)");
  bind_param(tally, cli, "n_start", "first n (default per filter)");
  bind_param(tally, cli, "checkpoint", "checkpoint file for restartable runs");
  bind_param(tally, cli, "seg_len", "checkpoint segment length (default 1e7)");

  auto* joint = add_named("jointtally", "joint (n, sigma(n)) residue counts");
  bind_param(joint, cli, "x", "count n <= x", true);
  bind_param(joint, cli, "p", "odd prime modulus", true);
  bind_param(joint, cli, "checkpoint", "checkpoint file for restartable runs");
  bind_param(joint, cli, "seg_len", "checkpoint segment length (default 1e7)");

  auto* charsum = add_named("charsum", "twisted character sums over n <= x");
  bind_param(charsum, cli, "x", "sum over n <= x", true);
  bind_param(charsum, cli, "p", "odd prime modulus", true);
  bind_param(charsum, cli, "chi", "character index", true);
  bind_param(charsum, cli, "psi", "second character (sigma twist)");
  bind_param(charsum, cli, "twist", "sigma | phi (default sigma)");

  auto* jacobi = add_named("jacobi", "twist coefficients and their bounds");
  bind_param(jacobi, cli, "p", "odd prime modulus", true);
  bind_param(jacobi, cli, "chi", "character index", true);
  bind_param(jacobi, cli, "psi", "second character (sigma twist)");
  bind_param(jacobi, cli, "twist", "sigma | phi (default sigma)");

  auto* primesum = add_named("primesum", "reciprocal sums over primes in a class");
  bind_param(primesum, cli, "m", "modulus", true);
  bind_param(primesum, cli, "a", "residue class", true);
  bind_param(primesum, cli, "x", "sum primes q <= x", true);

  auto* smooth = add_named("smooth", "count y-smooth integers up to x");
  bind_param(smooth, cli, "x", "upper bound", true);
  bind_param(smooth, cli, "y", "smoothness bound", true);

  auto* predict = add_named("predict", "main-term prediction for a claim");
  bind_param(predict, cli, "claim",
             "thm11 | thm12 | thm13 | lem31 | lem41 | lem52 | dp98", true);
  bind_param(predict, cli, "x", "evaluation point", true);
  bind_param(predict, cli, "p", "prime modulus", true);
  bind_param(predict, cli, "a", "residue class");
  bind_param(predict, cli, "b", "second class (lem52)");

  auto* compare = add_named("compare", "empirical counts vs main terms");
  bind_param(compare, cli, "claim",
             "thm11 | thm12 | thm13 | lem31 | lem41 | lem52 | dp98", true);
  compare->add_option("--x", cli.xs, "evaluation point (repeatable)")
      ->required();
  bind_param(compare, cli, "p", "prime modulus", true);
  bind_param(compare, cli, "a", "residue class");
  bind_param(compare, cli, "b", "second class (lem52)");

  auto* verify = add_named("verify", "exact structural identities and residuals");
  bind_param(verify, cli, "relation",
             "fundamental-phi | fundamental-s | uvsplit | sieve | squarefull",
             true);
  bind_param(verify, cli, "x", "range bound");
  bind_param(verify, cli, "p", "prime modulus");
  bind_param(verify, cli, "a", "residue class");
  bind_param(verify, cli, "lo", "sieve interval start");
  bind_param(verify, cli, "hi", "sieve interval end (exclusive)");
  bind_param(verify, cli, "z", "sifting bound");
  bind_param(verify, cli, "classes", "'zeros' or prime:residue list");
  bind_param(verify, cli, "n", "integer to decompose (squarefull)");

  auto* run = app.add_subcommand("run", "execute every job in a config file");
  run->add_option("config", cli.config_path, "job configuration file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  residua::JobOptions opts;
  opts.output_dir = cli.out_dir;
  opts.plot_data = cli.plot_data;
  if (cli.threads > 0) opts.threads = static_cast<residua::u32>(cli.threads);

  try {
    if (sieve->parsed()) {
      if (opts.threads) residua::set_thread_count(*opts.threads);
      return run_sieve(cli);
    }
    if (run->parsed()) {
      residua::RunConfig cfg = residua::load_config(cli.config_path);
      return residua::run_config(cfg, opts, std::cout);
    }
    residua::JobKind kind;
    if (tally->parsed()) kind = residua::JobKind::Tally;
    else if (joint->parsed()) kind = residua::JobKind::JointTally;
    else if (charsum->parsed()) kind = residua::JobKind::CharSum;
    else if (jacobi->parsed()) kind = residua::JobKind::Jacobi;
    else if (primesum->parsed()) kind = residua::JobKind::PrimeSum;
    else if (smooth->parsed()) kind = residua::JobKind::Smooth;
    else if (predict->parsed()) kind = residua::JobKind::Predict;
    else if (compare->parsed()) kind = residua::JobKind::Compare;
    else if (verify->parsed()) kind = residua::JobKind::Verify;
    else return kExitUsage;

    Cli spec_src = cli;
    if (kind == residua::JobKind::Compare) {
      std::string joined;
      for (const std::string& v : cli.xs)
        joined += (joined.empty() ? "" : ",") + v;
      spec_src.params["xs"] = joined;
    }
    return report_result(
        residua::execute_job(make_spec(kind, spec_src), opts));
  } catch (const residua::range_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "resource limit: out of memory\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
