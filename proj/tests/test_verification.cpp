#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>

#include "oracles.hpp"
#include "residua/residue_tally.hpp"
#include "residua/verification.hpp"

using namespace residua;

namespace {

// Brute pair count used by the fundamental-relation checks: (m, P) with
// P prime, mP <= x, P >= P+(m), m passing the avoid-predicate.
template <typename Keep>
u64 brute_pairs(u64 x, Keep&& keep) {
  auto primes = oracle::primes_up_to(static_cast<u32>(x));
  u64 total = 0;
  for (u64 m = 1; m * 2 <= x; ++m) {
    if (!keep(m)) continue;
    u64 pmin = oracle::largest_prime_factor(m);
    u64 pmax = x / m;
    for (u32 q : primes) {
      if (q > pmax) break;
      if (q >= pmin) ++total;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("fundamental phi relation: both sides recomputed independently") {
  const u64 x = 10000;
  const u32 p = 5, a = 1;
  auto r = verify_fundamental_phi(x, p, a);
  CHECK(r.relation == "fundamental-phi");
  CHECK(r.x == x);
  CHECK(r.p == p);
  CHECK(r.a == a);

  u64 lhs = 0;
  for (u64 n = 2; n <= x; ++n)
    if (oracle::phi(n) % p == a) ++lhs;
  REQUIRE(r.lhs == lhs);

  u64 pairs = brute_pairs(x, [&](u64 m) {
    u64 v = oracle::phi(m) % p;
    return v != 0 && (v + a) % p != 0;
  });
  REQUIRE(r.pairs == pairs);

  CHECK(r.rhs == doctest::Approx(pairs / 4.0).epsilon(1e-15));
  double residual = std::fabs(static_cast<double>(lhs) - pairs / 4.0) * p / x;
  CHECK(std::fabs(r.residual - residual) <= 1e-15);
  CHECK(r.tolerance == Calibration{}.fundamental_residual_tol);
  CHECK(r.pass == (r.residual <= r.tolerance));
}

TEST_CASE("fundamental s relation: both sides recomputed independently") {
  const u64 x = 10000;
  const u32 p = 7;
  for (u32 a : {0u, 3u}) {
    auto r = verify_fundamental_s(x, p, a);
    CHECK(r.relation == "fundamental-s");

    u64 lhs = 0;
    for (u64 n = 2; n <= x; ++n)
      if (n > 1 && !oracle::is_prime(n) && oracle::aliquot(n) % p == a)
        ++lhs;
    CAPTURE(a);
    REQUIRE(r.lhs == lhs);

    u64 pairs = brute_pairs(x, [&](u64 m) {
      return m > 1 && oracle::aliquot(m) % p != 0 &&
             oracle::sigma(m) % p != a;
    });
    REQUIRE(r.pairs == pairs);
    CHECK(r.rhs == doctest::Approx(pairs / 6.0).epsilon(1e-15));
  }
}

TEST_CASE("fundamental relation preconditions") {
  CHECK_THROWS_AS(verify_fundamental_phi(1000, 5, 0), std::invalid_argument);
  CHECK_THROWS_AS(verify_fundamental_phi(1000, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_fundamental_phi(2e8, 5, 1), residua::range_error);
  CHECK_THROWS_AS(verify_fundamental_s(2e8, 5, 0), residua::range_error);
}

TEST_CASE("uv-split assembly recovers the aliquot class counts") {
  for (u32 p : {5u, 101u}) {
    const u64 x = 10000;
    auto direct = tally(x, MultFn::Aliquot, p, TallyFilter::All, 1);
    auto j = joint_tally(x, p);
    u64 sum = 0;
    for (u32 a = 0; a < p; ++a) {
      u64 got = assemble_uvsplit(j, a);
      CAPTURE(p);
      CAPTURE(a);
      REQUIRE(got == direct.counts[a]);
      REQUIRE(assemble_uvsplit(x, p, a) == got);
      sum += got;
    }
    CHECK(sum == x);
  }
}

TEST_CASE("uv-split on a hand-sized window") {
  // x = 20, p = 3: classify s(n) mod 3 with trial division only.
  std::map<u32, u64> want;
  for (u64 n = 1; n <= 20; ++n)
    ++want[static_cast<u32>(oracle::aliquot(n) % 3)];
  for (u32 a = 0; a < 3; ++a) {
    CAPTURE(a);
    REQUIRE(assemble_uvsplit(20, 3, a) == want[a]);
  }
}

TEST_CASE("sieve experiment counts survivors exactly") {
  // No banned classes: everything survives.
  auto rep = sieve_experiment(1, 1001, 10, {});
  CHECK(rep.count == 1000);
  CHECK(rep.expected == doctest::Approx(1000.0));
  CHECK(rep.rel_deviation == doctest::Approx(0.0));
  CHECK(rep.within_band);

  // Banned zero classes mod 2, 3, 5 leave the 30-coprime residues; check
  // against a direct scan over a shifted window.
  const u64 lo = 999, hi = 100999;
  std::map<u32, u32> classes{{2, 0}, {3, 0}, {5, 0}};
  auto r2 = sieve_experiment(lo, hi, 5, classes);
  u64 want = 0;
  for (u64 n = lo; n < hi; ++n)
    if (n % 2 && n % 3 && n % 5) ++want;
  REQUIRE(r2.count == want);
  CHECK(r2.expected ==
        doctest::Approx((hi - lo) * 0.5 * (2.0 / 3) * (4.0 / 5))
            .epsilon(1e-12));
  CHECK(r2.error_scale ==
        doctest::Approx(std::exp(-0.5 * std::log(hi - lo) / std::log(5.0)))
            .epsilon(1e-12));

  // Nonzero residues, window not aligned to the moduli.
  std::map<u32, u32> shifted{{3, 2}, {7, 5}, {11, 10}};
  auto r3 = sieve_experiment(123, 54321, 11, shifted);
  want = 0;
  for (u64 n = 123; n < 54321; ++n)
    if (n % 3 != 2 && n % 7 != 5 && n % 11 != 10) ++want;
  REQUIRE(r3.count == want);
}

TEST_CASE("sieve experiment preconditions") {
  CHECK_THROWS_AS(sieve_experiment(10, 10, 5, {}), std::invalid_argument);
  CHECK_THROWS_AS(sieve_experiment(1, 3, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(sieve_experiment(1, 100, 10, {{4, 1}}),
                  std::invalid_argument);  // composite modulus
  CHECK_THROWS_AS(sieve_experiment(1, 100, 10, {{13, 1}}),
                  std::invalid_argument);  // modulus above Z
  CHECK_THROWS_AS(sieve_experiment(1, 100, 10, {{7, 7}}),
                  std::invalid_argument);  // residue out of range
  CHECK_THROWS_AS(sieve_experiment(1, 2'000'000'002ull, 10, {}),
                  residua::range_error);
}

TEST_CASE("squarefull split extracts the minus-one-class part") {
  // 1083 = 19^2 * 3 with 19 = -1 (mod 5), 3 not.
  auto [A, B] = squarefull_decomposition(1083, 5);
  CHECK(A == 361);
  CHECK(B == 3);

  for (u32 p : {3u, 5u, 7u}) {
    for (u64 n = 1; n <= 3000; ++n) {
      u64 wantA = 1;
      for (auto [q, e] : oracle::factor(n)) {
        if (q % p == p - 1) {
          for (u32 i = 0; i < e; ++i) wantA *= q;
        }
      }
      auto [a, b] = squarefull_decomposition(n, p);
      CAPTURE(p);
      CAPTURE(n);
      REQUIRE(a == wantA);
      REQUIRE(b == n / wantA);
      REQUIRE(a * b == n);
    }
  }
  CHECK(squarefull_decomposition(1, 7) == std::pair<u64, u64>{1, 1});
  CHECK_THROWS_AS(squarefull_decomposition(10, 4), std::invalid_argument);
  CHECK_THROWS_AS(squarefull_decomposition(0, 5), std::invalid_argument);
}
