#pragma once

#include <optional>
#include <string>
#include <vector>

#include "residua/common.hpp"
#include "residua/multfun_sieve.hpp"

namespace residua {

enum class TallyFilter : u8 { All, CompositeOnly, PrimeOnly };

const char* to_string(TallyFilter f);
// Accepts "all", "composite", "prime".
std::optional<TallyFilter> filter_from_string(const std::string& s);

// Starting point when the caller does not pass one: 1 for ALL (so the table
// partitions every n <= x), 2 for PRIME_ONLY, 4 for COMPOSITE_ONLY. Theorem
// scopes like "1 < n <= x" pass their n_start explicitly.
u64 default_n_start(TallyFilter f);

// Counts of f(n) mod p over n in [n_start, x] under the given filter.
// "Composite" excludes both 1 and primes.
struct TallyTable {
  MultFn fn = MultFn::Phi;
  u32 p = 0;
  TallyFilter filter = TallyFilter::All;
  u64 n_start = 1;
  u64 x = 0;
  std::vector<u64> counts;  // size p, indexed by residue

  u64 total() const;
};

TallyTable tally(u64 x, MultFn fn, u32 p, TallyFilter filter, u64 n_start);
TallyTable tally(u64 x, MultFn fn, u32 p, TallyFilter filter);

// Combines tallies over adjacent disjoint ranges ([a.n_start, a.x] followed
// by [b.n_start, b.x] or vice versa) with identical (fn, p, filter).
TallyTable merge(const TallyTable& a, const TallyTable& b);

// Counts of (n mod p, sigma(n) mod p) over 1 <= n <= x, stored row-major by
// plain residues; sign conventions are applied by queries, never here.
struct JointTallyTable {
  u32 p = 0;
  u64 x = 0;
  std::vector<u64> counts;  // p*p, [n mod p][sigma(n) mod p]

  u64 at(u32 r, u32 s) const {
    return counts[static_cast<size_t>(r) * p + s];
  }
  u64 total() const;
  std::vector<u64> n_marginal() const;      // sums over sigma classes
  std::vector<u64> sigma_marginal() const;  // sums over n classes
};

JointTallyTable joint_tally(u64 x, u32 p);

// #{n <= x : p | phi(n)}.
u64 count_p_divides_phi(u64 x, u32 p);

// Pairs (m, P): P prime, mP <= x, P >= P+(m) (ties allowed), m satisfying
// the predicate. Every n in (1, x] factors uniquely as m * P+(n), so the
// unrestricted count is floor(x) - 1.
struct PairPredicate {
  enum class Kind : u8 {
    Unrestricted,    // every m >= 1
    CompositeParts,  // m > 1
    PhiAvoid,        // phi(m) != 0 and phi(m) != -a (mod p)
    AliquotAvoid,    // m > 1, s(m) != 0 and sigma(m) != a (mod p)
    Never,
  };
  Kind kind = Kind::Unrestricted;
  u32 a = 0;
};

const char* to_string(PairPredicate::Kind k);

struct PairCount {
  u64 x = 0;
  u32 p = 0;
  PairPredicate predicate;
  u64 value = 0;
};

PairCount pair_count(u64 x, u32 p, PairPredicate pred);

namespace detail {

// Joint (n mod p, sigma(n) mod p) counts restricted to n_start <= n <= x,
// same row-major layout as JointTallyTable. Used by checkpointed runs.
std::vector<u64> joint_counts_range(u64 n_start, u64 x, u32 p);

}  // namespace detail

}  // namespace residua
