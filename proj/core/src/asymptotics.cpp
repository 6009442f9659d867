#include "residua/asymptotics.hpp"

#include <cmath>
#include <cstdio>

#include "residua/primes.hpp"

namespace residua {

const char* to_string(ClaimId c) {
  switch (c) {
    case ClaimId::Thm11: return "thm11";
    case ClaimId::Thm12: return "thm12";
    case ClaimId::Thm13: return "thm13";
    case ClaimId::Lem31: return "lem31";
    case ClaimId::Lem41: return "lem41";
    case ClaimId::Lem52: return "lem52";
    case ClaimId::Dp98C3: return "dp98";
  }
  return "?";
}

std::optional<ClaimId> claim_from_string(const std::string& s) {
  if (s == "thm11") return ClaimId::Thm11;
  if (s == "thm12") return ClaimId::Thm12;
  if (s == "thm13") return ClaimId::Thm13;
  if (s == "lem31") return ClaimId::Lem31;
  if (s == "lem41") return ClaimId::Lem41;
  if (s == "lem52") return ClaimId::Lem52;
  if (s == "dp98") return ClaimId::Dp98C3;
  return {};
}

PredictionRecord main_term(ClaimId claim, double x, u32 p,
                           std::optional<u32> a, std::optional<u32> b) {
  require(is_prime(p), "main_term: p must be prime");
  require(x > std::exp(1.0), "main_term: x must exceed e");
  PredictionRecord rec;
  rec.claim = claim;
  rec.x = x;
  rec.p = p;
  rec.a = a;
  rec.b = b;

  const double lx = std::log(x);
  const double class_pow = p > 1 ? std::pow(lx, 1.0 / (p - 1)) : lx;
  switch (claim) {
    case ClaimId::Thm11:
      require(p >= 5, "main_term: the coprime-class totient claim needs p >= 5");
      require(a && *a % p != 0, "main_term: class a must be coprime to p");
      rec.main_term = x / (p * class_pow);
      break;
    case ClaimId::Thm12:
      require(p >= 3, "main_term: p must be >= 3");
      rec.main_term = x * std::log(lx) / p;
      break;
    case ClaimId::Thm13:
      require(p >= 3, "main_term: p must be >= 3");
      rec.main_term = x / p;
      break;
    case ClaimId::Lem31:
      require(p >= 5, "main_term: the coprime-mass claim needs p >= 5");
      rec.main_term = x / class_pow;
      break;
    case ClaimId::Lem41:
      require(p >= 3, "main_term: p must be >= 3");
      rec.main_term = x / (p * class_pow);
      break;
    case ClaimId::Lem52:
      require(p >= 3, "main_term: p must be >= 3");
      require(a && b && *a % p != 0 && *b % p != 0,
              "main_term: the joint claim needs classes u, v coprime to p");
      rec.main_term = x / (static_cast<double>(p) * p * class_pow);
      break;
    case ClaimId::Dp98C3:
      require(p == 3, "main_term: the Dence-Pomerance constants are mod 3");
      require(a && (*a == 1 || *a == 2), "main_term: class must be 1 or 2");
      rec.main_term = (*a == 1 ? kDp98C31 : kDp98C32) * x / std::sqrt(lx);
      break;
  }
  return rec;
}

HeuristicThresholds thresholds(double x, u32 p) {
  require(p >= 3, "thresholds: p must be >= 3");
  require(x > std::exp(std::exp(1.0)), "thresholds: x must exceed e^e");
  HeuristicThresholds h;
  h.x = x;
  h.p = p;
  const double lx = std::log(x);
  const double llx = std::log(lx);
  h.kappa = std::exp(-llx / (p - 1));
  h.Lx = std::exp(lx * std::log(llx) / llx);
  h.regime_large = static_cast<double>(p) / llx > 10.0;
  h.s_failure_threshold = std::sqrt(x) * lx * lx * lx;
  return h;
}

double lsd_remainder(double c0, double log_x) {
  require(c0 > 0 && log_x > 0, "lsd_remainder: need c0 > 0 and log x > 0");
  return std::pow(c0, -3.0) * std::exp(-std::sqrt(0.5 * c0 * log_x) / 6.0) +
         1.0 / (c0 * log_x);
}

LsdParameters lsd_parameters(u32 p, double eta, double cprime, cplx a_eps) {
  require(p >= 5 && is_prime(p), "lsd_parameters: p must be a prime >= 5");
  require(eta > 0 && eta < 1.0 / 81, "lsd_parameters: eta must lie in (0, 1/81)");
  require(cprime > 0, "lsd_parameters: C' must be positive");
  LsdParameters out;
  out.p = p;
  out.eta = eta;
  out.cprime = cprime;
  out.a_eps = a_eps;
  const double sp = std::sqrt(static_cast<double>(p));
  const double lp = std::log(static_cast<double>(p));
  out.c0 = eta / (sp * lp * lp);
  require(out.c0 <= 2.0 / 11, "lsd_parameters: c0 must be <= 2/11");
  out.log_M = cprime * sp * std::log(cprime * sp);
  out.M = std::exp(out.log_M);  // +inf for moderate p; log_M stays usable
  out.log_x_min = 16.0 / out.c0;
  out.x_min = std::exp(out.log_x_min);  // astronomically large, expected
  out.Rx = lsd_remainder(out.c0, out.log_x_min);
  return out;
}

cplx recip_gamma(cplx z) {
  // Power series for 1/Gamma, truncated where terms fall below double noise.
  static constexpr double k[26] = {
      1.0000000000000000, 0.5772156649015329, -0.6558780715202538,
      -0.0420026350340952, 0.1665386113822915, -0.0421977345555443,
      -0.0096219715278770, 0.0072189432466630, -0.0011651675918591,
      -0.0002152416741149, 0.0001280502823882, -0.0000201348547807,
      -0.0000012504934821, 0.0000011330272320, -0.0000002056338417,
      0.0000000061160950, 0.0000000050020075, -0.0000000011812746,
      0.0000000001043427, 0.0000000000077823, -0.0000000000036968,
      0.0000000000005100, -0.0000000000000206, -0.0000000000000054,
      0.0000000000000014, 0.0000000000000001};
  cplx acc{0.0, 0.0};
  for (int i = 25; i >= 0; --i) acc = acc * z + k[i];
  return acc * z;
}

TruncatedEulerProduct truncated_G(const CharacterTable& t,
                                  const CoefficientVector& coeffs, u64 Q) {
  require(coeffs.p == t.p, "truncated_G: table/coefficients mismatch");
  require(Q >= 2, "truncated_G: Q must be >= 2");
  require_range(Q <= 100'000'000ull, "truncated_G: Q above 1e8 out of scope");
  if (coeffs.kind == TwistKind::SigmaTwist) {
    require(!(coeffs.chi == 0 && coeffs.psi && *coeffs.psi == 0),
            "truncated_G: the trivial pair is excluded");
  }

  const u32 p = t.p, L = t.order;
  const cplx a_eps = coeffs.a[0];
  TruncatedEulerProduct out;
  out.q_limit = Q;
  out.value = cplx{1.0, 0.0};

  u64 next_decade = 10;
  for_each_prime(2, Q + 1, [&](u64 q) {
    while (q > next_decade && next_decade <= Q) {
      out.partials.emplace_back(next_decade, out.value);
      next_decade *= 10;
    }
    const u64 q_mod = q % p;
    const double invq = 1.0 / static_cast<double>(q);
    cplx local{1.0, 0.0};
    if (q_mod != 0) {
      // q^k, sigma(q^k), phi(q^k) mod p track along k
      u64 pw = q_mod;
      u64 sig = 1 + q_mod;
      if (sig >= p) sig -= p;
      u64 phi = q_mod - 1;
      double inv = invq;
      for (int kk = 1; kk <= 60 && inv > 1e-16; ++kk) {
        cplx w{0.0, 0.0};
        if (coeffs.kind == TwistKind::SigmaTwist) {
          if (pw != 0 && sig != 0) {
            u64 ang = (static_cast<u64>(coeffs.chi) * t.index[pw] +
                       static_cast<u64>(*coeffs.psi) * t.index[sig]) % L;
            w = t.unit[ang];
          }
        } else {
          if (phi != 0)
            w = t.unit[(static_cast<u64>(coeffs.chi) * t.index[phi]) % L];
        }
        local += w * inv;
        pw = pw * q_mod % p;
        sig = (sig * q_mod + 1) % p;
        phi = phi * q_mod % p;
        inv *= invq;
      }
    }
    out.value *= local * std::exp(a_eps * std::log1p(-invq));
  });

  double tail = 0.0;
  for (const auto& [bound, val] : out.partials) {
    if (bound <= Q / 10) tail = std::abs(out.value - val);
  }
  out.tail_estimate = tail;
  return out;
}

namespace {

void require_match(bool ok) {
  require(ok, "compare: prediction and tally parameters do not match");
}

std::string format_class(const PredictionRecord& rec) {
  char buf[32];
  if (rec.claim == ClaimId::Lem52 && rec.a && rec.b) {
    std::snprintf(buf, sizeof buf, "%u:%u", *rec.a, *rec.b);
  } else if (rec.a) {
    std::snprintf(buf, sizeof buf, "%u", *rec.a);
  } else {
    return "";
  }
  return buf;
}

}  // namespace

PredictionRecord compare(PredictionRecord rec, u64 empirical) {
  rec.empirical = empirical;
  require(rec.main_term > 0, "compare: main term must be positive");
  rec.ratio = static_cast<double>(empirical) / rec.main_term;
  return rec;
}

PredictionRecord compare(PredictionRecord rec, const TallyTable& t) {
  require_match(t.p == rec.p);
  require_match(static_cast<double>(t.x) == rec.x);
  u64 emp = 0;
  switch (rec.claim) {
    case ClaimId::Thm11:
      require_match(t.fn == MultFn::Phi && t.filter == TallyFilter::All &&
                    t.n_start == 1 && rec.a.has_value());
      emp = t.counts[*rec.a % t.p];
      break;
    case ClaimId::Thm12:
      require_match(t.fn == MultFn::Phi && t.filter == TallyFilter::All &&
                    t.n_start == 1);
      emp = t.counts[0];
      break;
    case ClaimId::Thm13:
      require_match(t.fn == MultFn::Aliquot &&
                    t.filter == TallyFilter::CompositeOnly && rec.a.has_value());
      emp = t.counts[*rec.a % t.p];
      break;
    case ClaimId::Lem31:
      require_match(t.fn == MultFn::Phi && t.filter == TallyFilter::All &&
                    t.n_start == 1);
      emp = t.total() - t.counts[0];
      break;
    case ClaimId::Dp98C3:
      require_match(t.fn == MultFn::Phi && t.p == 3 &&
                    t.filter == TallyFilter::All && t.n_start == 1 &&
                    rec.a.has_value());
      emp = t.counts[*rec.a % 3];
      break;
    default:
      require_match(false);  // joint-table claims
  }
  return compare(std::move(rec), emp);
}

PredictionRecord compare(PredictionRecord rec, const JointTallyTable& j) {
  require_match(j.p == rec.p);
  require_match(static_cast<double>(j.x) == rec.x);
  u64 emp = 0;
  switch (rec.claim) {
    case ClaimId::Lem41: {
      require_match(rec.a.has_value());
      const u32 a = *rec.a % j.p;
      for (u32 v = 1; v < j.p; ++v) emp += j.at(a, v);
      break;
    }
    case ClaimId::Lem52:
      require_match(rec.a.has_value() && rec.b.has_value());
      emp = j.at(*rec.a % j.p, *rec.b % j.p);
      break;
    default:
      require_match(false);
  }
  return compare(std::move(rec), emp);
}

std::string comparison_csv_header() {
  return "claim,x,p,a,empirical,main_term,ratio";
}

std::string comparison_csv_row(const PredictionRecord& rec) {
  char buf[256];
  char xbuf[48];
  if (rec.x == std::floor(rec.x) && rec.x < 9e15) {
    std::snprintf(xbuf, sizeof xbuf, "%llu",
                  static_cast<unsigned long long>(rec.x));
  } else {
    std::snprintf(xbuf, sizeof xbuf, "%.6e", rec.x);
  }
  char ebuf[32] = "";
  if (rec.empirical)
    std::snprintf(ebuf, sizeof ebuf, "%llu",
                  static_cast<unsigned long long>(*rec.empirical));
  char rbuf[40] = "";
  if (rec.ratio) std::snprintf(rbuf, sizeof rbuf, "%.10e", *rec.ratio);
  std::snprintf(buf, sizeof buf, "%s,%s,%u,%s,%s,%.10e,%s",
                to_string(rec.claim), xbuf, rec.p, format_class(rec).c_str(),
                ebuf, rec.main_term, rbuf);
  return buf;
}

}  // namespace residua
