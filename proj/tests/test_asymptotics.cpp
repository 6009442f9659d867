#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "oracles.hpp"
#include "residua/asymptotics.hpp"
#include "residua/residue_tally.hpp"

using namespace residua;

TEST_CASE("main terms compute the documented formulas") {
  const double x = 1e8;
  const double lx = std::log(x);
  CHECK(main_term(ClaimId::Thm11, x, 5, 1).main_term ==
        doctest::Approx(x / (5 * std::pow(lx, 0.25))).epsilon(1e-14));
  CHECK(main_term(ClaimId::Thm12, x, 7).main_term ==
        doctest::Approx(x * std::log(lx) / 7).epsilon(1e-14));
  CHECK(main_term(ClaimId::Thm13, x, 101, 0).main_term ==
        doctest::Approx(x / 101).epsilon(1e-14));
  CHECK(main_term(ClaimId::Lem31, x, 5).main_term ==
        doctest::Approx(x / std::pow(lx, 0.25)).epsilon(1e-14));
  CHECK(main_term(ClaimId::Lem41, x, 11, 3).main_term ==
        doctest::Approx(x / (11 * std::pow(lx, 0.1))).epsilon(1e-14));
  CHECK(main_term(ClaimId::Lem52, x, 11, 3, 4).main_term ==
        doctest::Approx(x / (121 * std::pow(lx, 0.1))).epsilon(1e-14));
  CHECK(main_term(ClaimId::Dp98C3, x, 3, 1).main_term ==
        doctest::Approx(0.61 * x / std::sqrt(lx)).epsilon(1e-14));
  CHECK(main_term(ClaimId::Dp98C3, x, 3, 2).main_term ==
        doctest::Approx(0.33 * x / std::sqrt(lx)).epsilon(1e-14));
}

TEST_CASE("main term preconditions") {
  CHECK_THROWS_AS(main_term(ClaimId::Thm11, 1e6, 5, 5),
                  std::invalid_argument);  // class not coprime
  CHECK_THROWS_AS(main_term(ClaimId::Thm11, 1e6, 5),
                  std::invalid_argument);  // class missing
  CHECK_THROWS_AS(main_term(ClaimId::Thm11, 1e6, 3, 1),
                  std::invalid_argument);  // needs p >= 5
  CHECK_THROWS_AS(main_term(ClaimId::Thm13, 2.0, 7, 0),
                  std::invalid_argument);  // x <= e
  CHECK_THROWS_AS(main_term(ClaimId::Thm13, 1e6, 8, 0),
                  std::invalid_argument);  // p not prime
  CHECK_THROWS_AS(main_term(ClaimId::Dp98C3, 1e6, 5, 1),
                  std::invalid_argument);  // constants are mod 3
  CHECK_THROWS_AS(main_term(ClaimId::Dp98C3, 1e6, 3, 0),
                  std::invalid_argument);  // class 0 has no constant
  CHECK_THROWS_AS(main_term(ClaimId::Lem52, 1e6, 7, 1),
                  std::invalid_argument);  // second class missing
}

TEST_CASE("claim names round-trip") {
  for (ClaimId c : {ClaimId::Thm11, ClaimId::Thm12, ClaimId::Thm13,
                    ClaimId::Lem31, ClaimId::Lem41, ClaimId::Lem52,
                    ClaimId::Dp98C3})
    CHECK(claim_from_string(to_string(c)) == c);
  CHECK_FALSE(claim_from_string("thm99").has_value());
}

TEST_CASE("thresholds compute the documented expressions") {
  auto h = thresholds(1e8, 101);
  const double lx = std::log(1e8), llx = std::log(lx);
  CHECK(h.kappa == doctest::Approx(std::exp(-llx / 100)).epsilon(1e-14));
  CHECK(h.Lx ==
        doctest::Approx(std::exp(lx * std::log(llx) / llx)).epsilon(1e-14));
  CHECK(h.regime_large);  // 101/loglog(1e8) is about 35
  CHECK(h.s_failure_threshold ==
        doctest::Approx(1e4 * lx * lx * lx).epsilon(1e-14));
  CHECK_FALSE(thresholds(1e8, 5).regime_large);
  CHECK_THROWS_AS(thresholds(10.0, 5), std::invalid_argument);  // x <= e^e
}

TEST_CASE("contour parameters and remainder") {
  auto lp = lsd_parameters(101);
  const double sp = std::sqrt(101.0), logp = std::log(101.0);
  CHECK(lp.c0 == doctest::Approx(0.01 / (sp * logp * logp)).epsilon(1e-14));
  CHECK(lp.log_M ==
        doctest::Approx(10 * sp * std::log(10 * sp)).epsilon(1e-14));
  CHECK(lp.log_x_min == doctest::Approx(16.0 / lp.c0).epsilon(1e-14));
  CHECK(std::isinf(lp.x_min));  // the double overflows; log_x_min is the API
  CHECK(lp.Rx ==
        doctest::Approx(lsd_remainder(lp.c0, lp.log_x_min)).epsilon(1e-14));
  CHECK(lsd_remainder(0.1, 1000.0) ==
        doctest::Approx(1000.0 * std::exp(-std::sqrt(50.0) / 6.0) + 0.01)
            .epsilon(1e-13));
  CHECK_THROWS_AS(lsd_parameters(101, 0.02), std::invalid_argument);
  CHECK_THROWS_AS(lsd_parameters(4), std::invalid_argument);
  CHECK_THROWS_AS(lsd_remainder(0.0, 10.0), std::invalid_argument);
}

TEST_CASE("reciprocal gamma at reference points") {
  CHECK(std::abs(recip_gamma({1.0, 0.0}) - cplx{1.0, 0.0}) < 1e-14);
  CHECK(std::abs(recip_gamma({0.5, 0.0}) -
                 cplx{1.0 / std::sqrt(M_PI), 0.0}) < 1e-14);
  CHECK(std::abs(recip_gamma({0.0, 0.0})) == 0.0);   // Gamma pole at 0
  CHECK(std::abs(recip_gamma({-1.0, 0.0})) < 1e-14); // Gamma pole at -1
  // |1/Gamma(i)| = sqrt(sinh(pi)/pi).
  double want = std::sqrt(std::sinh(M_PI) / M_PI);
  CHECK(std::abs(recip_gamma({0.0, 1.0})) ==
        doctest::Approx(want).epsilon(1e-12));
  // Real coefficients force conjugate symmetry.
  cplx z{0.3, 0.7};
  CHECK(recip_gamma(std::conj(z)) == std::conj(recip_gamma(z)));
}

TEST_CASE("truncated Euler product: structure and a slow recomputation") {
  auto t = build_character_table(7);
  auto coeffs = sigma_twist_coefficients(t, 1, 2);
  auto g = truncated_G(t, coeffs, 10000);
  CHECK(g.heuristic);
  CHECK(g.q_limit == 10000);
  REQUIRE(g.partials.size() == 3);  // snapshots at 10, 100, 1000
  CHECK(g.partials[0].first == 10);
  CHECK(g.partials[1].first == 100);
  CHECK(g.partials[2].first == 1000);
  CHECK(std::fabs(g.tail_estimate -
                  std::abs(g.value - g.partials[2].second)) <= 1e-15);

  // Recompute with extended precision and oracle characters.
  oracle::CharTable o(7);
  std::complex<long double> value{1.0L, 0.0L};
  const std::complex<long double> a_eps{coeffs.a[0].real(),
                                        coeffs.a[0].imag()};
  for (u32 q : oracle::primes_up_to(10000)) {
    std::complex<long double> local{1.0L, 0.0L};
    long double inv = 1.0L / q;
    u64 qk = q;
    for (int k = 1; k <= 40 && inv > 1e-20L; ++k) {
      auto w = o.chi(coeffs.chi, qk % 7) *
               o.chi(*coeffs.psi, oracle::sigma(qk) % 7);
      local += std::complex<long double>(w.real(), w.imag()) * inv;
      // Keep q^k inside the cheap-factoring range; the dropped tail is
      // below 1e-16 and the comparison tolerance is 1e-9.
      if (qk > 1'000'000'000'000'000ull / q) break;
      qk *= q;
      inv /= q;
    }
    value *= local * std::exp(a_eps * std::log1p(-(long double)1.0L / q));
  }
  CHECK(std::abs(g.value - cplx{static_cast<double>(value.real()),
                                static_cast<double>(value.imag())}) < 1e-9);

  auto trivial = sigma_twist_coefficients(t, 0, 0);
  CHECK_THROWS_AS(truncated_G(t, trivial, 1000), std::invalid_argument);
  CHECK_THROWS_AS(truncated_G(t, coeffs, 1), std::invalid_argument);
  CHECK_THROWS_AS(truncated_G(t, coeffs, 2'000'000'000ull),
                  residua::range_error);
}

TEST_CASE("compare routes each claim to the right table cell") {
  const u64 x = 1000;
  auto phi5 = tally(x, MultFn::Phi, 5, TallyFilter::All, 1);
  auto rec = compare(main_term(ClaimId::Thm11, 1000.0, 5, 2), phi5);
  REQUIRE(rec.empirical.has_value());
  CHECK(*rec.empirical == phi5.counts[2]);
  CHECK(*rec.ratio ==
        doctest::Approx(phi5.counts[2] / rec.main_term).epsilon(1e-14));

  CHECK(*compare(main_term(ClaimId::Thm12, 1000.0, 5), phi5).empirical ==
        phi5.counts[0]);
  CHECK(*compare(main_term(ClaimId::Lem31, 1000.0, 5), phi5).empirical ==
        1000 - phi5.counts[0]);

  auto ali = tally(x, MultFn::Aliquot, 7, TallyFilter::CompositeOnly);
  CHECK(*compare(main_term(ClaimId::Thm13, 1000.0, 7, 0), ali).empirical ==
        ali.counts[0]);

  auto phi3 = tally(x, MultFn::Phi, 3, TallyFilter::All, 1);
  CHECK(*compare(main_term(ClaimId::Dp98C3, 1000.0, 3, 1), phi3).empirical ==
        phi3.counts[1]);

  auto j = joint_tally(x, 5);
  u64 want41 = 0;
  for (u32 v = 1; v < 5; ++v) want41 += j.at(2, v);
  CHECK(*compare(main_term(ClaimId::Lem41, 1000.0, 5, 2), j).empirical ==
        want41);
  CHECK(*compare(main_term(ClaimId::Lem52, 1000.0, 5, 2, 3), j).empirical ==
        j.at(2, 3));
}

TEST_CASE("compare rejects mismatched inputs instead of coercing") {
  auto phi5 = tally(1000, MultFn::Phi, 5, TallyFilter::All, 1);
  CHECK_THROWS_AS(compare(main_term(ClaimId::Thm11, 2000.0, 5, 2), phi5),
                  std::invalid_argument);  // x mismatch
  CHECK_THROWS_AS(compare(main_term(ClaimId::Thm11, 1000.0, 7, 2), phi5),
                  std::invalid_argument);  // p mismatch
  CHECK_THROWS_AS(compare(main_term(ClaimId::Thm13, 1000.0, 5, 0), phi5),
                  std::invalid_argument);  // wrong function and filter
  CHECK_THROWS_AS(compare(main_term(ClaimId::Lem41, 1000.0, 5, 2), phi5),
                  std::invalid_argument);  // joint claim, scalar table
  auto j = joint_tally(1000, 5);
  CHECK_THROWS_AS(compare(main_term(ClaimId::Thm11, 1000.0, 5, 2), j),
                  std::invalid_argument);
  auto part = tally(1000, MultFn::Phi, 5, TallyFilter::All, 2);
  CHECK_THROWS_AS(compare(main_term(ClaimId::Thm11, 1000.0, 5, 2), part),
                  std::invalid_argument);  // n_start must be 1
}

TEST_CASE("csv rows freeze the report format") {
  CHECK(comparison_csv_header() == "claim,x,p,a,empirical,main_term,ratio");
  auto rec = main_term(ClaimId::Thm13, 1000.0, 7, 2);
  CHECK(comparison_csv_row(rec) == "thm13,1000,7,2,,1.4285714286e+02,");
  auto done = compare(rec, 140);
  CHECK(comparison_csv_row(done) ==
        "thm13,1000,7,2,140,1.4285714286e+02,9.8000000000e-01");
  // Joint classes render as u:v; huge x falls back to scientific.
  auto joint = main_term(ClaimId::Lem52, 100.0, 5, 2, 3);
  CHECK(comparison_csv_row(joint).rfind("lem52,100,5,2:3,", 0) == 0);
  auto big = main_term(ClaimId::Thm13, 1e16, 7, 2);
  CHECK(comparison_csv_row(big).rfind("thm13,1.000000e+16,7,2,", 0) == 0);
  // Claims without a class leave the column empty.
  auto noclass = main_term(ClaimId::Thm12, 1000.0, 7);
  CHECK(comparison_csv_row(noclass).rfind("thm12,1000,7,,", 0) == 0);
}
