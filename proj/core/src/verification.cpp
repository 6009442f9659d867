#include "residua/verification.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

#include "residua/primes.hpp"

namespace residua {

namespace {

ResidualReport finish(ResidualReport r, const Calibration& cal) {
  r.rhs = static_cast<double>(r.pairs) / (r.p - 1.0);
  double diff = std::fabs(static_cast<double>(r.lhs) - r.rhs);
  r.residual = diff * r.p / static_cast<double>(r.x);
  r.tolerance = cal.fundamental_residual_tol;
  r.pass = r.residual <= r.tolerance;
  return r;
}

}  // namespace

ResidualReport verify_fundamental_phi(u64 x, u32 p, u32 a,
                                      const Calibration& cal) {
  require(p >= 5, "modulus must be at least 5");
  a %= p;
  require(a != 0, "class must be coprime to the modulus");
  require_range(x <= 100'000'000ull, "x exceeds the verification cap 1e8");
  ResidualReport r;
  r.relation = "fundamental-phi";
  r.x = x;
  r.p = p;
  r.a = a;
  r.lhs = tally(x, MultFn::Phi, p, TallyFilter::All, 2).counts[a];
  r.pairs = pair_count(x, p, {PairPredicate::Kind::PhiAvoid, a}).value;
  return finish(r, cal);
}

ResidualReport verify_fundamental_s(u64 x, u32 p, u32 a,
                                    const Calibration& cal) {
  require(p >= 5, "modulus must be at least 5");
  a %= p;
  require_range(x <= 100'000'000ull, "x exceeds the verification cap 1e8");
  ResidualReport r;
  r.relation = "fundamental-s";
  r.x = x;
  r.p = p;
  r.a = a;
  r.lhs = tally(x, MultFn::Aliquot, p, TallyFilter::CompositeOnly, 2).counts[a];
  r.pairs = pair_count(x, p, {PairPredicate::Kind::AliquotAvoid, a}).value;
  return finish(r, cal);
}

u64 assemble_uvsplit(const JointTallyTable& j, u32 a) {
  require(j.p >= 3, "modulus must be at least 3");
  a %= j.p;
  // Entry (u, v) counts n = -u, sigma(n) = v, so s(n) = v + u = a.
  u64 total = 0;
  for (u32 u = 0; u < j.p; ++u) {
    u32 r = (j.p - u) % j.p;
    u32 v = (a + j.p - u) % j.p;
    total += j.at(r, v);
  }
  return total;
}

u64 assemble_uvsplit(u64 x, u32 p, u32 a) {
  return assemble_uvsplit(joint_tally(x, p), a);
}

SieveExperimentReport sieve_experiment(u64 lo, u64 hi, u32 z,
                                       const std::map<u32, u32>& classes,
                                       const Calibration& cal) {
  require(hi > lo, "interval must be nonempty");
  u64 len = hi - lo;
  require(z >= 3 && len >= z, "interval length must be at least Z >= 3");
  require_range(len <= 1'000'000'000ull, "interval exceeds the cap 1e9");
  for (const auto& [q, r] : classes) {
    require(is_prime(q) && q <= z, "sifting moduli must be primes <= Z");
    require(r < q, "residue out of range");
  }

  std::vector<u64> banned((len + 63) / 64, 0);
  for (const auto& [q, r] : classes) {
    u64 first = r >= lo % q ? r - lo % q : q - lo % q + r;
    for (u64 i = first; i < len; i += q) banned[i >> 6] |= 1ull << (i & 63);
  }
  u64 count = len;
  for (u64 w : banned) count -= static_cast<u64>(__builtin_popcountll(w));

  SieveExperimentReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.z = z;
  rep.count = count;
  double density = 1.0;
  for (const auto& [q, r] : classes) density *= 1.0 - 1.0 / q;
  rep.expected = static_cast<double>(len) * density;
  rep.rel_deviation =
      std::fabs(static_cast<double>(count) - rep.expected) / rep.expected;
  rep.error_scale = std::exp(-0.5 * std::log(static_cast<double>(len)) /
                             std::log(static_cast<double>(z)));
  rep.within_band = rep.rel_deviation <= cal.sieve_deviation_factor * rep.error_scale;
  return rep;
}

std::pair<u64, u64> squarefull_decomposition(u64 n, u32 p) {
  require(p >= 3 && is_prime(p), "modulus must be an odd prime");
  require(n >= 1, "n must be positive");
  u64 a = 1, rest = n;
  auto absorb = [&](u64 q) {
    u64 power = 1;
    while (rest % q == 0) {
      rest /= q;
      power *= q;
    }
    if (q % p == p - 1) a *= power;
  };
  if (rest % 2 == 0) absorb(2);
  for (u64 d = 3; d * d <= rest; d += 2)
    if (rest % d == 0) absorb(d);
  if (rest > 1) absorb(rest);  // leftover prime factor
  return {a, n / a};
}

}  // namespace residua
