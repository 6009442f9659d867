#include "residua/multfun_sieve.hpp"

#include <algorithm>
#include <cmath>

#include "residua/primes.hpp"

namespace residua {

const char* to_string(MultFn fn) {
  switch (fn) {
    case MultFn::Phi: return "phi";
    case MultFn::Sigma: return "sigma";
    case MultFn::Aliquot: return "aliquot";
  }
  return "?";
}

std::optional<MultFn> fn_from_string(const std::string& s) {
  if (s == "phi") return MultFn::Phi;
  if (s == "sigma") return MultFn::Sigma;
  if (s == "aliquot" || s == "s") return MultFn::Aliquot;
  return std::nullopt;
}

namespace {

// Reduction mod a fixed p via Barrett multiplication; exact for any 64-bit
// input since the estimated quotient is off by at most 2.
struct Barrett {
  u64 p = 1, mu = 0;
  explicit Barrett(u64 p_) : p(p_), mu(p_ > 1 ? ~0ull / p_ : 0) {}
  u64 reduce(u64 a) const {
    u64 q = static_cast<u64>((static_cast<unsigned __int128>(a) * mu) >> 64);
    u64 r = a - q * p;
    while (r >= p) r -= p;
    return r;
  }
};

u64 phi_pp_full(u64 q, u32 e) {
  u64 r = q - 1;
  for (u32 k = 1; k < e; ++k) r *= q;
  return r;
}

u64 sigma_pp_full(u64 q, u32 e) {
  u64 s = 1;
  for (u32 k = 0; k < e; ++k) s = s * q + 1;
  return s;
}

u64 phi_pp_mod(u64 q_mod, u32 e, const Barrett& br) {
  u64 r = q_mod + br.p - 1;
  if (r >= br.p) r -= br.p;
  for (u32 k = 1; k < e; ++k) r = br.reduce(r * q_mod);
  return r;
}

u64 sigma_pp_mod(u64 q_mod, u32 e, const Barrett& br) {
  u64 s = 1;
  for (u32 k = 0; k < e; ++k) s = br.reduce(s * q_mod + 1);
  return s;
}

enum class Acc : u8 { None, Full, Res };

template <typename UInt, Acc A, bool kSigmaFamily>
void scan_core(u64 lo, u64 hi, u32 p, std::span<const u32> base,
               detail::SegmentScan& out, std::vector<UInt>& rem) {
  const size_t len = static_cast<size_t>(hi - lo);
  rem.resize(len);
  for (size_t i = 0; i < len; ++i) rem[i] = static_cast<UInt>(lo + i);

  const Barrett br(p ? p : 1);
  u64* const lpf = out.lpf.data();
  u64* const v64 = A == Acc::Full ? out.value64.data() : nullptr;
  u32* const v32 = A == Acc::Res ? out.value32.data() : nullptr;

  for (u32 q : base) {
    const u64 q64 = q;
    u64 first = ((lo + q64 - 1) / q64) * q64;
    if (first >= hi) continue;
    u64 c1_full = 0, c1_mod = 0;
    if constexpr (A == Acc::Full) {
      c1_full = kSigmaFamily ? q64 + 1 : q64 - 1;
    } else if constexpr (A == Acc::Res) {
      c1_mod = br.reduce(kSigmaFamily ? q64 + 1 : q64 - 1);
    }
    const UInt qU = static_cast<UInt>(q);
    for (u64 n = first; n < hi; n += q64) {
      const size_t i = static_cast<size_t>(n - lo);
      UInt r = rem[i] / qU;
      if (r % qU != 0) {
        if constexpr (A == Acc::Full) v64[i] *= c1_full;
        else if constexpr (A == Acc::Res)
          v32[i] = static_cast<u32>(br.reduce(static_cast<u64>(v32[i]) * c1_mod));
      } else {
        u32 e = 2;
        r /= qU;
        while (r % qU == 0) {
          r /= qU;
          ++e;
        }
        if constexpr (A == Acc::Full) {
          v64[i] *= kSigmaFamily ? sigma_pp_full(q64, e) : phi_pp_full(q64, e);
        } else if constexpr (A == Acc::Res) {
          u64 q_mod = br.reduce(q64);
          u64 c = kSigmaFamily ? sigma_pp_mod(q_mod, e, br) : phi_pp_mod(q_mod, e, br);
          v32[i] = static_cast<u32>(br.reduce(static_cast<u64>(v32[i]) * c));
        }
      }
      rem[i] = r;
      lpf[i] = q64;
    }
  }

  u64 n = lo;
  for (size_t i = 0; i < len; ++i, ++n) {
    const u64 r = rem[i];
    if (r > 1) {
      lpf[i] = r;
      if constexpr (A == Acc::Full) {
        v64[i] *= kSigmaFamily ? r + 1 : r - 1;
      } else if constexpr (A == Acc::Res) {
        u64 c = br.reduce(kSigmaFamily ? r + 1 : r + br.p - 1);
        v32[i] = static_cast<u32>(br.reduce(static_cast<u64>(v32[i]) * c));
      }
    }
    out.is_prime[i] = (lpf[i] == n && n > 1) ? 1 : 0;
  }
}

}  // namespace

namespace detail {

void scan_segment(u64 lo, u64 hi, const ScanRequest& req,
                  std::span<const u32> base, SegmentScan& out) {
  require(lo >= 1 && hi > lo, "scan_segment: need 1 <= lo < hi");
  const size_t len = static_cast<size_t>(hi - lo);
  out.lo = lo;
  out.hi = hi;
  out.lpf.assign(len, 1);
  out.is_prime.assign(len, 0);

  const bool res_mode = req.fn && req.p != 0;
  const bool full_mode = req.fn && req.p == 0;
  if (full_mode) {
    out.value64.assign(len, 1);
    out.value32.clear();
  } else if (res_mode) {
    require(req.p >= 2, "scan_segment: modulus must be >= 2");
    out.value32.assign(len, 1);
    out.value64.clear();
  } else {
    out.value64.clear();
    out.value32.clear();
  }

  const bool sigma_family = req.fn && *req.fn != MultFn::Phi;
  const bool fits32 = hi <= (1ull << 32);

  static thread_local std::vector<u32> rem32;
  static thread_local std::vector<u64> rem64;

  if (fits32) {
    if (full_mode) {
      if (sigma_family) scan_core<u32, Acc::Full, true>(lo, hi, 0, base, out, rem32);
      else scan_core<u32, Acc::Full, false>(lo, hi, 0, base, out, rem32);
    } else if (res_mode) {
      if (sigma_family) scan_core<u32, Acc::Res, true>(lo, hi, req.p, base, out, rem32);
      else scan_core<u32, Acc::Res, false>(lo, hi, req.p, base, out, rem32);
    } else {
      scan_core<u32, Acc::None, false>(lo, hi, 0, base, out, rem32);
    }
  } else {
    if (full_mode) {
      if (sigma_family) scan_core<u64, Acc::Full, true>(lo, hi, 0, base, out, rem64);
      else scan_core<u64, Acc::Full, false>(lo, hi, 0, base, out, rem64);
    } else if (res_mode) {
      if (sigma_family) scan_core<u64, Acc::Res, true>(lo, hi, req.p, base, out, rem64);
      else scan_core<u64, Acc::Res, false>(lo, hi, req.p, base, out, rem64);
    } else {
      scan_core<u64, Acc::None, false>(lo, hi, 0, base, out, rem64);
    }
  }

  if (req.fn && *req.fn == MultFn::Aliquot) {
    if (full_mode) {
      for (size_t i = 0; i < len; ++i) out.value64[i] -= lo + i;
    } else {
      u32 m = static_cast<u32>(lo % req.p);
      const u32 p = req.p;
      for (size_t i = 0; i < len; ++i) {
        u32 v = out.value32[i] + p - m;
        if (v >= p) v -= p;
        out.value32[i] = v;
        if (++m == p) m = 0;
      }
    }
  }
}

}  // namespace detail

namespace {

// Transient scan memory is ~5x the element count; cap single-shot blocks and
// point callers at segment streaming instead.
constexpr u64 kMaxBlock = 1ull << 25;

void check_block(u64 lo, u64 hi) {
  require(lo >= 1 && hi > lo, "sieve_range: need 1 <= lo < hi");
  require_range(hi - lo <= kMaxBlock,
                "sieve_range: block too large, stream smaller segments");
}

}  // namespace

SieveSegment sieve_range(u64 lo, u64 hi, MultFn fn) {
  check_block(lo, hi);
  if (fn == MultFn::Phi) {
    require_range(hi <= (1ull << 62), "sieve_range: FULL phi needs hi <= 2^62");
  } else {
    require_range(hi <= kFullModeSigmaCap,
                  "sieve_range: FULL sigma/aliquot needs hi <= 2^40 + 1");
  }
  std::vector<u32> base = base_primes_for(hi);
  detail::SegmentScan scan;
  detail::scan_segment(lo, hi, {fn, 0}, base, scan);
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.fn = fn;
  seg.full = std::move(scan.value64);
  return seg;
}

SieveSegment sieve_range(u64 lo, u64 hi, MultFn fn, u32 p) {
  check_block(lo, hi);
  require(p >= 3 && p < (1u << 31) && is_prime(p),
          "sieve_range: modulus must be an odd prime below 2^31");
  std::vector<u32> base = base_primes_for(hi);
  detail::SegmentScan scan;
  detail::scan_segment(lo, hi, {fn, p}, base, scan);
  SieveSegment seg;
  seg.lo = lo;
  seg.hi = hi;
  seg.fn = fn;
  seg.modulus = p;
  seg.residues = std::move(scan.value32);
  return seg;
}

std::vector<u64> largest_prime_factor_range(u64 lo, u64 hi) {
  check_block(lo, hi);
  std::vector<u32> base = base_primes_for(hi);
  detail::SegmentScan scan;
  detail::scan_segment(lo, hi, {std::nullopt, 0}, base, scan);
  return std::move(scan.lpf);
}

double SmoothQuery::u() const {
  require(X >= 1 && Y > 1, "SmoothQuery::u: need X >= 1 and Y > 1");
  return std::log(X) / std::log(Y);
}

u64 count_smooth(const SmoothQuery& q) {
  require(q.X >= 1 && q.Y >= 1, "count_smooth: need X, Y >= 1");
  require_range(q.X <= 1e8, "count_smooth: X above 1e8 out of scope");
  const u64 X = static_cast<u64>(q.X);
  const u64 Y = q.Y >= static_cast<double>(X) ? X : static_cast<u64>(q.Y);
  std::vector<u32> base = base_primes_for(X + 1);
  detail::SegmentScan scan;
  u64 count = 0;
  for (u64 lo = 1; lo <= X; lo += kDefaultSegmentLength) {
    u64 hi = std::min(X + 1, lo + kDefaultSegmentLength);
    detail::scan_segment(lo, hi, {std::nullopt, 0}, base, scan);
    for (u64 v : scan.lpf)
      if (v <= Y) ++count;
  }
  return count;
}

double smooth_main_term(const SmoothQuery& q) {
  require(q.X >= q.Y && q.Y >= 3, "smooth_main_term: need X >= Y >= 3");
  double u = q.u();
  require(u > 1, "smooth_main_term: need u > 1");
  return q.X * std::exp(-u * std::log(u));
}

}  // namespace residua
