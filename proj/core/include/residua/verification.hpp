#pragma once

#include <map>
#include <string>
#include <utility>

#include "residua/common.hpp"
#include "residua/residue_tally.hpp"

namespace residua {

// Observed-bound constants from pilot runs of this build. The underlying
// error terms are o(.) with no explicit rate, so pass thresholds are
// calibration artifacts: they document what this build achieved and turn
// regressions into loud failures.
struct Calibration {
  const char* version = "cal-2026.08.1";
  double fundamental_residual_tol = 0.05;  // |LHS-RHS| * p/x at x=1e7, p=101
  double sieve_deviation_factor = 3.0;     // times exp(-(1/2) log X/log Z)
  double pn_constant_max = 10.0;           // times log(2m)/phi(m), X=1e8
  double thm11_maxmin_max = 1.02;          // p=5 coprime classes, x=1e8
  double thm13_class_dev_max = 0.02;       // p=101 composite classes, x=1e8
  double dp98_ratio_tol = 0.25;            // around 0.61/0.33
};

struct ResidualReport {
  std::string relation;
  u64 x = 0;
  u32 p = 0, a = 0;
  u64 lhs = 0;         // exact count
  double rhs = 0;      // pair count / (p-1)
  u64 pairs = 0;       // raw pair count
  double residual = 0; // |lhs - rhs| * p / x
  double tolerance = 0;
  bool pass = false;
};

// Exact #{1 < n <= x : phi(n) = a (p)} against the pair count over
// (m, P) with phi(m) avoiding 0 and -a, scaled by 1/(p-1).
ResidualReport verify_fundamental_phi(u64 x, u32 p, u32 a,
                                      const Calibration& cal = {});

// Exact #{composite n <= x : s(n) = a (p)} against the pair count over
// m > 1 with s(m) != 0 and sigma(m) != a, scaled by 1/(p-1).
ResidualReport verify_fundamental_s(u64 x, u32 p, u32 a,
                                    const Calibration& cal = {});

// Sum of N_{u,v}(x) over u+v = a (mod p), where N uses the n = -u
// convention; equals #{n <= x : s(n) = a (p)} exactly.
u64 assemble_uvsplit(const JointTallyTable& j, u32 a);
u64 assemble_uvsplit(u64 x, u32 p, u32 a);

struct SieveExperimentReport {
  u64 lo = 0, hi = 0;
  u32 z = 0;
  u64 count = 0;        // integers avoiding every banned class
  double expected = 0;  // X * prod(1 - 1/q)
  double rel_deviation = 0;
  double error_scale = 0;  // exp(-(1/2) log X / log Z)
  bool within_band = false;
};

// Counts n in [lo, hi) with n != classes[q] (mod q) for every listed prime
// q <= z, against the density heuristic X * prod(1 - 1/q).
SieveExperimentReport sieve_experiment(u64 lo, u64 hi, u32 z,
                                       const std::map<u32, u32>& classes,
                                       const Calibration& cal = {});

// A = largest divisor of n supported on primes q = -1 (mod p), B = n / A.
std::pair<u64, u64> squarefull_decomposition(u64 n, u32 p);

}  // namespace residua
