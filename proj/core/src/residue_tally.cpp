#include "residua/residue_tally.hpp"

#include <algorithm>

#include "residua/parallel.hpp"
#include "residua/primes.hpp"

namespace residua {

namespace {

constexpr u64 kTallyCapX = 1'000'000'000'000ull;
constexpr u64 kPairCapX = 1'000'000'000ull;
constexpr u32 kJointCapP = 1024;

void check_modulus(u32 p) {
  require(p >= 3 && is_prime(p), "tally: p must be an odd prime");
}

}  // namespace

const char* to_string(TallyFilter f) {
  switch (f) {
    case TallyFilter::All: return "all";
    case TallyFilter::CompositeOnly: return "composite";
    case TallyFilter::PrimeOnly: return "prime";
  }
  return "?";
}

std::optional<TallyFilter> filter_from_string(const std::string& s) {
  if (s == "all") return TallyFilter::All;
  if (s == "composite") return TallyFilter::CompositeOnly;
  if (s == "prime") return TallyFilter::PrimeOnly;
  return std::nullopt;
}

u64 default_n_start(TallyFilter f) {
  switch (f) {
    case TallyFilter::All: return 1;
    case TallyFilter::PrimeOnly: return 2;
    case TallyFilter::CompositeOnly: return 4;
  }
  return 1;
}

u64 TallyTable::total() const {
  u64 t = 0;
  for (u64 c : counts) t += c;
  return t;
}

TallyTable tally(u64 x, MultFn fn, u32 p, TallyFilter filter, u64 n_start) {
  check_modulus(p);
  require(x >= p, "tally: x must be >= p");
  require(n_start >= 1, "tally: n_start must be >= 1");
  require_range(x <= kTallyCapX, "tally: x above 1e12 out of scope");

  TallyTable table;
  table.fn = fn;
  table.p = p;
  table.filter = filter;
  table.n_start = n_start;
  table.x = x;
  table.counts.assign(p, 0);
  if (x < n_start) return table;  // empty scope

  std::vector<u32> base = base_primes_for(x + 1);
  table.counts = detail::reduce_segments<std::vector<u64>>(
      n_start, x + 1, kDefaultSegmentLength, std::vector<u64>(p, 0),
      [&](u64, u64 lo, u64 hi, std::vector<u64>& acc) {
        thread_local detail::SegmentScan scan;
        detail::scan_segment(lo, hi, {fn, p}, base, scan);
        const size_t len = static_cast<size_t>(hi - lo);
        switch (filter) {
          case TallyFilter::All:
            for (size_t i = 0; i < len; ++i) ++acc[scan.value32[i]];
            break;
          case TallyFilter::CompositeOnly:
            for (size_t i = 0; i < len; ++i)
              if (!scan.is_prime[i] && lo + i > 1) ++acc[scan.value32[i]];
            break;
          case TallyFilter::PrimeOnly:
            for (size_t i = 0; i < len; ++i)
              if (scan.is_prime[i]) ++acc[scan.value32[i]];
            break;
        }
      },
      [](std::vector<u64>& total, const std::vector<u64>& part) {
        for (size_t i = 0; i < total.size(); ++i) total[i] += part[i];
      });
  return table;
}

TallyTable tally(u64 x, MultFn fn, u32 p, TallyFilter filter) {
  return tally(x, fn, p, filter, default_n_start(filter));
}

TallyTable merge(const TallyTable& a, const TallyTable& b) {
  require(a.fn == b.fn && a.p == b.p && a.filter == b.filter,
          "merge: tables disagree on fn/p/filter");
  const bool a_then_b = a.x + 1 == b.n_start;
  const bool b_then_a = b.x + 1 == a.n_start;
  require(a_then_b || b_then_a, "merge: ranges must be adjacent and disjoint");
  TallyTable out = a_then_b ? a : b;
  const TallyTable& tail = a_then_b ? b : a;
  out.x = tail.x;
  for (size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += tail.counts[i];
  return out;
}

u64 JointTallyTable::total() const {
  u64 t = 0;
  for (u64 c : counts) t += c;
  return t;
}

std::vector<u64> JointTallyTable::n_marginal() const {
  std::vector<u64> m(p, 0);
  for (u32 r = 0; r < p; ++r)
    for (u32 s = 0; s < p; ++s) m[r] += at(r, s);
  return m;
}

std::vector<u64> JointTallyTable::sigma_marginal() const {
  std::vector<u64> m(p, 0);
  for (u32 r = 0; r < p; ++r)
    for (u32 s = 0; s < p; ++s) m[s] += at(r, s);
  return m;
}

namespace detail {

std::vector<u64> joint_counts_range(u64 n_start, u64 x, u32 p) {
  check_modulus(p);
  require(x >= n_start && n_start >= 1, "joint counts: empty range");
  require_range(x <= kTallyCapX, "joint_tally: x above 1e12 out of scope");
  require_range(p <= kJointCapP, "joint_tally: p above 1024 exceeds the memory envelope");

  std::vector<u32> base = base_primes_for(x + 1);
  return detail::reduce_segments<std::vector<u64>>(
      n_start, x + 1, kDefaultSegmentLength,
      std::vector<u64>(static_cast<size_t>(p) * p, 0),
      [&](u64, u64 lo, u64 hi, std::vector<u64>& acc) {
        thread_local detail::SegmentScan scan;
        detail::scan_segment(lo, hi, {MultFn::Sigma, p}, base, scan);
        const size_t len = static_cast<size_t>(hi - lo);
        u32 r1 = static_cast<u32>(lo % p);
        for (size_t i = 0; i < len; ++i) {
          ++acc[static_cast<size_t>(r1) * p + scan.value32[i]];
          if (++r1 == p) r1 = 0;
        }
      },
      [](std::vector<u64>& total, const std::vector<u64>& part) {
        for (size_t i = 0; i < total.size(); ++i) total[i] += part[i];
      });
}

}  // namespace detail

JointTallyTable joint_tally(u64 x, u32 p) {
  require(x >= 1, "joint_tally: x must be >= 1");
  JointTallyTable table;
  table.p = p;
  table.x = x;
  table.counts = detail::joint_counts_range(1, x, p);
  return table;
}

u64 count_p_divides_phi(u64 x, u32 p) {
  TallyTable t = tally(x, MultFn::Phi, p, TallyFilter::All, 1);
  return t.counts[0];
}

const char* to_string(PairPredicate::Kind k) {
  switch (k) {
    case PairPredicate::Kind::Unrestricted: return "unrestricted";
    case PairPredicate::Kind::CompositeParts: return "m>1";
    case PairPredicate::Kind::PhiAvoid: return "phi-avoid";
    case PairPredicate::Kind::AliquotAvoid: return "aliquot-avoid";
    case PairPredicate::Kind::Never: return "never";
  }
  return "?";
}

PairCount pair_count(u64 x, u32 p, PairPredicate pred) {
  check_modulus(p);
  require(x >= 2, "pair_count: x must be >= 2");
  require_range(x <= kPairCapX, "pair_count: x above 1e9 out of scope");
  if (pred.kind == PairPredicate::Kind::PhiAvoid)
    require(pred.a % p != 0, "pair_count: phi predicate needs a coprime to p");
  pred.a %= p;

  PairCount out;
  out.x = x;
  out.p = p;
  out.predicate = pred;
  if (pred.kind == PairPredicate::Kind::Never) return out;

  const PrimeCountTable pct(x);
  const u64 m_hi = x / 2 + 1;  // P >= 2 forces m <= x/2
  std::vector<u32> base = base_primes_for(m_hi);

  using Kind = PairPredicate::Kind;
  detail::ScanRequest req;
  if (pred.kind == Kind::PhiAvoid) req = {MultFn::Phi, p};
  else if (pred.kind == Kind::AliquotAvoid) req = {MultFn::Sigma, p};
  else req = {std::nullopt, 0};

  // phi: exclude phi(m) in {0, p - a}; aliquot: exclude sigma(m) in {m, a}
  // (s(m) = 0 means sigma(m) = m mod p) and m = 1.
  const u32 phi_banned = static_cast<u32>((p - pred.a) % p);

  out.value = detail::reduce_segments<u64>(
      1, m_hi, kDefaultSegmentLength, 0,
      [&](u64, u64 lo, u64 hi, u64& acc) {
        thread_local detail::SegmentScan scan;
        detail::scan_segment(lo, hi, req, base, scan);
        const size_t len = static_cast<size_t>(hi - lo);
        u32 m_mod = static_cast<u32>(lo % p);
        for (size_t i = 0; i < len; ++i) {
          const u64 m = lo + i;
          bool ok = true;
          switch (pred.kind) {
            case Kind::Unrestricted:
              break;
            case Kind::CompositeParts:
              ok = m > 1;
              break;
            case Kind::PhiAvoid: {
              u32 v = scan.value32[i];
              ok = v != 0 && v != phi_banned;
              break;
            }
            case Kind::AliquotAvoid: {
              u32 sig = scan.value32[i];
              ok = m > 1 && sig != m_mod && sig != pred.a;
              break;
            }
            case Kind::Never:
              ok = false;
              break;
          }
          if (ok) {
            const u64 top = pct.pi(x / m);
            const u64 bot = pct.pi(scan.lpf[i] - 1);
            if (top > bot) acc += top - bot;
          }
          if (++m_mod == p) m_mod = 0;
        }
      },
      [](u64& total, const u64& part) { total += part; });
  return out;
}

}  // namespace residua
