#include "residua/characters.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numbers>
#include <unordered_map>

#include "residua/multfun_sieve.hpp"
#include "residua/parallel.hpp"
#include "residua/primes.hpp"

namespace residua {

namespace {

u64 powmod(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::vector<u32> distinct_prime_factors(u32 n) {
  std::vector<u32> out;
  for (u32 q = 2; static_cast<u64>(q) * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Planning is not thread-safe in FFTW; executes on distinct arrays are.
// UNALIGNED lets plans run on ordinary vector storage.
PlanPair plans_for(size_t n) {
  static std::mutex mu;
  static std::unordered_map<size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<cplx> a(n), b(n);
  PlanPair pp;
  pp.fwd = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(b.data()),
                            FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  pp.bwd = fftw_plan_dft_1d(static_cast<int>(n),
                            reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(b.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache.emplace(n, pp);
  return pp;
}

void run_dft(const std::vector<cplx>& in, std::vector<cplx>& out, bool forward) {
  const size_t n = in.size();
  require(n >= 1, "dft: empty input");
  out.resize(n);
  if (n == 1) {
    out[0] = in[0];
    return;
  }
  PlanPair pp = plans_for(n);
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(forward ? pp.fwd : pp.bwd, src, dst);
}

}  // namespace

namespace detail {

void dft_forward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  run_dft(in, out, true);
}

void dft_backward(const std::vector<cplx>& in, std::vector<cplx>& out) {
  run_dft(in, out, false);
}

}  // namespace detail

CharacterTable build_character_table(u32 p) {
  require(p >= 3 && is_prime(p), "build_character_table: p must be an odd prime");
  require_range(p <= 10'000'000, "build_character_table: p above 1e7 out of scope");
  CharacterTable t;
  t.p = p;
  t.order = p - 1;

  std::vector<u32> factors = distinct_prime_factors(p - 1);
  u32 g = 0;
  for (u32 cand = 2; cand < p; ++cand) {
    bool primitive = true;
    for (u32 f : factors) {
      if (powmod(cand, (p - 1) / f, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = cand;
      break;
    }
  }
  t.g = g;

  t.index.assign(p, 0);
  t.pow_of_g.assign(p - 1, 0);
  u64 cur = 1;
  for (u32 k = 0; k < p - 1; ++k) {
    t.pow_of_g[k] = static_cast<u32>(cur);
    t.index[static_cast<size_t>(cur)] = k;
    cur = cur * g % p;
  }

  t.unit.resize(p - 1);
  const double step = 2.0 * std::numbers::pi / (p - 1);
  for (u32 k = 0; k < p - 1; ++k) t.unit[k] = std::polar(1.0, step * k);
  return t;
}

CoefficientVector sigma_twist_coefficients(const CharacterTable& t, u32 chi,
                                           u32 psi) {
  require(chi < t.order && psi < t.order, "sigma_twist: character index out of range");
  const u32 L = t.order;
  std::vector<cplx> h(L);
  for (u32 k = 0; k < L; ++k) {
    u32 m = t.pow_of_g[k];
    u32 m1 = (m + 1 == t.p) ? 0 : m + 1;
    if (m1 == 0) {
      h[k] = {0.0, 0.0};
    } else {
      u64 ang = (static_cast<u64>(chi) * k + static_cast<u64>(psi) * t.index[m1]) % L;
      h[k] = t.unit[ang];
    }
  }
  CoefficientVector c;
  c.kind = TwistKind::SigmaTwist;
  c.p = t.p;
  c.chi = chi;
  c.psi = psi;
  detail::dft_forward(h, c.a);
  const double inv = 1.0 / L;
  for (auto& z : c.a) z *= inv;
  if (psi == 0) c.exceptional = chi;
  return c;
}

CoefficientVector phi_twist_coefficients(const CharacterTable& t, u32 chi) {
  require(chi != 0, "phi_twist: chi must be nontrivial");
  require(chi < t.order, "phi_twist: character index out of range");
  const u32 L = t.order;
  std::vector<cplx> h(L);
  for (u32 k = 0; k < L; ++k) {
    u32 m = t.pow_of_g[k];
    if (m == 1) {
      h[k] = {0.0, 0.0};  // chi(0)
    } else {
      h[k] = t.unit[(static_cast<u64>(chi) * t.index[m - 1]) % L];
    }
  }
  CoefficientVector c;
  c.kind = TwistKind::PhiTwist;
  c.p = t.p;
  c.chi = chi;
  detail::dft_forward(h, c.a);
  const double inv = 1.0 / L;
  for (auto& z : c.a) z *= inv;
  c.exceptional = 0;
  return c;
}

double verify_reconstruction(const CoefficientVector& c,
                             const CharacterTable& t) {
  require(c.p == t.p, "verify_reconstruction: table/coefficients mismatch");
  std::vector<cplx> recon;
  detail::dft_backward(c.a, recon);
  double worst = 0.0;
  for (u32 k = 0; k < t.order; ++k) {
    u32 n = t.pow_of_g[k];
    cplx target;
    if (c.kind == TwistKind::SigmaTwist) {
      target = t.chi(c.chi, n) * t.chi(*c.psi, n + 1);
    } else {
      target = t.chi(c.chi, n == 1 ? t.p : n - 1);  // chi(0) = 0 at n = 1
    }
    worst = std::max(worst, std::abs(recon[k] - target));
  }
  return worst;
}

namespace {

constexpr u64 kCharSumCap = 1'000'000'000'000ull;

template <class PerN>
cplx streamed_sum(u64 x, MultFn fn, u32 p, PerN&& per_n) {
  std::vector<u32> base = base_primes_for(x + 1);
  auto partials = detail::map_segments<cplx>(
      1, x + 1, kDefaultSegmentLength, [&](u64, u64 lo, u64 hi) {
        thread_local detail::SegmentScan scan;
        detail::scan_segment(lo, hi, {fn, p}, base, scan);
        cplx acc{0.0, 0.0};
        u32 r1 = static_cast<u32>(lo % p);
        const size_t len = static_cast<size_t>(hi - lo);
        for (size_t i = 0; i < len; ++i) {
          acc += per_n(r1, scan.value32[i]);
          if (++r1 == p) r1 = 0;
        }
        return acc;
      });
  return detail::pairwise_fold(std::move(partials),
                               [](cplx a, cplx b) { return a + b; });
}

}  // namespace

cplx char_sum(u64 x, const CharacterTable& t, u32 chi, u32 psi) {
  require(x >= 1, "char_sum: x must be >= 1");
  require(chi < t.order && psi < t.order, "char_sum: character index out of range");
  require_range(x <= kCharSumCap, "char_sum: x above 1e12 out of scope");
  const u32 L = t.order;
  return streamed_sum(x, MultFn::Sigma, t.p, [&](u32 r1, u32 r2) -> cplx {
    if (r1 == 0 || r2 == 0) return {0.0, 0.0};
    u64 ang = (static_cast<u64>(chi) * t.index[r1] +
               static_cast<u64>(psi) * t.index[r2]) % L;
    return t.unit[ang];
  });
}

cplx char_sum_phi(u64 x, const CharacterTable& t, u32 chi) {
  require(x >= 1, "char_sum_phi: x must be >= 1");
  require(chi < t.order, "char_sum_phi: character index out of range");
  require_range(x <= kCharSumCap, "char_sum_phi: x above 1e12 out of scope");
  const u32 L = t.order;
  return streamed_sum(x, MultFn::Phi, t.p, [&](u32, u32 r) -> cplx {
    if (r == 0) return {0.0, 0.0};
    return t.unit[(static_cast<u64>(chi) * t.index[r]) % L];
  });
}

CharSumMatrix char_sum_matrix(u64 x, const CharacterTable& t) {
  require(x >= 1, "char_sum_matrix: x must be >= 1");
  require_range(x <= 1'000'000'000ull && t.p <= 257,
                "char_sum_matrix: capped at x <= 1e9, p <= 257");
  const u32 p = t.p, L = t.order;
  std::vector<u32> base = base_primes_for(x + 1);
  using Mat = std::vector<cplx>;

  auto partials = detail::map_segments<Mat>(
      1, x + 1, kDefaultSegmentLength, [&](u64, u64 lo, u64 hi) {
        thread_local detail::SegmentScan scan;
        detail::scan_segment(lo, hi, {MultFn::Sigma, p}, base, scan);
        Mat m(static_cast<size_t>(L) * L, cplx{0.0, 0.0});
        std::vector<cplx> psi_vals(L);
        u32 r1 = static_cast<u32>(lo % p);
        const size_t len = static_cast<size_t>(hi - lo);
        for (size_t i = 0; i < len; ++i) {
          u32 r2 = scan.value32[i];
          if (r1 != 0 && r2 != 0) {
            u64 i1 = t.index[r1], i2 = t.index[r2];
            for (u32 d = 0; d < L; ++d)
              psi_vals[d] = t.unit[(d * i2) % L];
            for (u32 c = 0; c < L; ++c) {
              cplx uc = t.unit[(c * i1) % L];
              cplx* row = m.data() + static_cast<size_t>(c) * L;
              for (u32 d = 0; d < L; ++d) row[d] += uc * psi_vals[d];
            }
          }
          if (++r1 == p) r1 = 0;
        }
        return m;
      });

  Mat total = detail::pairwise_fold(std::move(partials), [](Mat a, Mat b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
  });
  CharSumMatrix out;
  out.p = p;
  out.x = x;
  out.s = std::move(total);
  return out;
}

cplx assemble_orthogonality(const CharSumMatrix& m, const CharacterTable& t,
                            u32 u, u32 v) {
  require(m.p == t.p, "assemble_orthogonality: table/matrix mismatch");
  require(u % t.p != 0 && v % t.p != 0,
          "assemble_orthogonality: classes must be coprime to p");
  const u32 L = t.order;
  const u64 iu = t.index[u % t.p], iv = t.index[v % t.p];
  cplx total{0.0, 0.0};
  for (u32 c = 0; c < L; ++c) {
    cplx cu = std::conj(t.unit[(c * iu) % L]);
    for (u32 d = 0; d < L; ++d) {
      total += cu * std::conj(t.unit[(d * iv) % L]) * m.at(c, d);
    }
  }
  return total / (static_cast<double>(L) * L);
}

double assemble_orthogonality(u64 x, const CharacterTable& t, u32 u, u32 v) {
  CharSumMatrix m = char_sum_matrix(x, t);
  return assemble_orthogonality(m, t, u, v).real();
}

}  // namespace residua
