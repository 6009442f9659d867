#pragma once

#include <optional>
#include <string>
#include <vector>

#include "residua/characters.hpp"
#include "residua/common.hpp"
#include "residua/residue_tally.hpp"

namespace residua {

// Identifies which asymptotic claim a prediction instantiates.
//   Thm11:  #{n <= x : phi(n) = a (p)}            ~ x/(p (log x)^(1/(p-1)))
//   Thm12:  #{n <= x : p | phi(n)}                ~ x loglog(x)/p
//   Thm13:  #{n <= x composite : s(n) = a (p)}    ~ x/p
//   Lem31:  #{n <= x : p does not divide phi(n)}  ~ x/(log x)^(1/(p-1))
//   Lem41:  #{n <= x : n = a (p), sigma(n) != 0}  ~ x/(p (log x)^(1/(p-1)))
//   Lem52:  #{n <= x : n = a, sigma(n) = b (p)}   ~ x/(p^2 (log x)^(1/(p-1)))
//   Dp98C3: #{n <= x : phi(n) = a (3)}            ~ C_{3,a} x/sqrt(log x)
enum class ClaimId : u8 { Thm11, Thm12, Thm13, Lem31, Lem41, Lem52, Dp98C3 };

const char* to_string(ClaimId c);
std::optional<ClaimId> claim_from_string(const std::string& s);

struct PredictionRecord {
  ClaimId claim = ClaimId::Thm13;
  double x = 0;
  u32 p = 0;
  std::optional<u32> a;  // residue class (u for Lem52)
  std::optional<u32> b;  // second class (v), Lem52 only
  double main_term = 0;
  std::optional<u64> empirical;
  std::optional<double> ratio;  // empirical / main_term
};

// Constants reported by Dence and Pomerance for the mod-3 totient counts.
inline constexpr double kDp98C31 = 0.61;
inline constexpr double kDp98C32 = 0.33;

PredictionRecord main_term(ClaimId claim, double x, u32 p,
                           std::optional<u32> a = {},
                           std::optional<u32> b = {});

// kappa = exp(-loglog x/(p-1)) and L(x) = exp(log x logloglog x/loglog x),
// with the regime indicator p/loglog x > 10 and the aliquot failure
// threshold sqrt(x) (log x)^3.
struct HeuristicThresholds {
  double x = 0;
  u32 p = 0;
  double kappa = 0;
  double Lx = 0;
  bool regime_large = false;     // p/loglog x > 10
  double s_failure_threshold = 0;
};

HeuristicThresholds thresholds(double x, u32 p);

// Parameters feeding the contour-method remainder: c0 = eta/(sqrt(p) log^2 p),
// M = (C' sqrt(p))^(C' sqrt(p)), x_min = exp(16/c0), and
// R(x) = c0^-3 exp(-(1/6) sqrt(c0 log(x)/2)) + 1/(c0 log x).
// M and x_min overflow double for moderate p; the log fields stay finite and
// x_min being astronomically large is expected, not an error.
struct LsdParameters {
  u32 p = 0;
  double eta = 0, cprime = 0;
  double c0 = 0;
  double log_M = 0, M = 0;
  double log_x_min = 0, x_min = 0;
  double Rx = 0;  // R evaluated at x_min
  cplx a_eps{0.0, 0.0};
};

LsdParameters lsd_parameters(u32 p, double eta = 0.01, double cprime = 10.0,
                             cplx a_eps = cplx{0.0, 0.0});

double lsd_remainder(double c0, double log_x);

// 1/Gamma(z) by the standard power series; intended for the small arguments
// (|z| <= 1) arising as a_eps. 1/Gamma(0) = 0.
cplx recip_gamma(cplx z);

// Partial Euler product at s = 1 for the sigma-twisted series with the
// zeta^a_eps factor stripped: over primes q <= Q, multiply
// (1 + sum_k chi(q^k) psi(sigma(q^k))/q^k) * (1 - 1/q)^a_eps.
// Convergence at s = 1 is conditional; the value is NUMERICAL-HEURISTIC and
// accompanied by a successive-difference tail estimate, never certified.
struct TruncatedEulerProduct {
  cplx value{0.0, 0.0};
  double tail_estimate = 0;
  u64 q_limit = 0;
  bool heuristic = true;
  std::vector<std::pair<u64, cplx>> partials;  // value after each decade
};

TruncatedEulerProduct truncated_G(const CharacterTable& t,
                                  const CoefficientVector& coeffs, u64 Q);

// Fills empirical and ratio from a matching tally. Parameter mismatch is
// rejected, never coerced.
PredictionRecord compare(PredictionRecord rec, const TallyTable& tally);
PredictionRecord compare(PredictionRecord rec, const JointTallyTable& joint);
PredictionRecord compare(PredictionRecord rec, u64 empirical);

// CSV report rows: claim,x,p,a,empirical,main_term,ratio. Lem52 renders the
// class pair as u:v in the a column.
std::string comparison_csv_header();
std::string comparison_csv_row(const PredictionRecord& rec);

}  // namespace residua
