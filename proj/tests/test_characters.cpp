#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "residua/characters.hpp"
#include "residua/parallel.hpp"
#include "residua/residue_tally.hpp"

using namespace residua;

namespace {

double cdist(cplx a, oracle::cplx b) {
  return std::abs(a - cplx{b.real(), b.imag()});
}

}  // namespace

TEST_CASE("character table matches the from-scratch construction") {
  for (u32 p : {3u, 5u, 13u, 101u}) {
    auto t = build_character_table(p);
    oracle::CharTable o(p);
    CAPTURE(p);
    REQUIRE(t.g == o.g);  // both pick the smallest primitive root
    REQUIRE(t.order == p - 1);
    for (u32 j = 0; j < p - 1; ++j)
      for (u32 n = 0; n < p; ++n) {
        CAPTURE(j);
        CAPTURE(n);
        REQUIRE(cdist(t.chi(j, n), o.chi(j, n)) < 1e-12);
      }
  }
}

TEST_CASE("characters are multiplicative and orthogonal") {
  auto t = build_character_table(31);
  for (u32 j : {0u, 1u, 7u, 30u / 2u}) {
    for (u32 m = 1; m < 31; ++m)
      for (u32 n = 1; n < 31; ++n) {
        CAPTURE(j);
        REQUIRE(std::abs(t.chi(j, static_cast<u64>(m) * n) -
                         t.chi(j, m) * t.chi(j, n)) < 1e-12);
      }
    cplx row{0.0, 0.0};
    for (u32 n = 1; n < 31; ++n) row += t.chi(j, n);
    if (j == 0)
      CHECK(std::abs(row - cplx{30.0, 0.0}) < 1e-10);
    else
      CHECK(std::abs(row) < 1e-10);
  }
  for (u32 n = 1; n < 31; ++n) CHECK(std::abs(t.chi(0, n) - 1.0) < 1e-15);
  CHECK(std::abs(t.chi(5, 0)) == 0.0);
}

TEST_CASE("table preconditions") {
  CHECK_THROWS_AS(build_character_table(2), std::invalid_argument);
  CHECK_THROWS_AS(build_character_table(100), std::invalid_argument);
}

TEST_CASE("sigma-twist coefficients equal the direct expansion") {
  for (u32 p : {5u, 7u, 13u, 31u}) {
    auto t = build_character_table(p);
    oracle::CharTable o(p);
    for (u32 chi = 0; chi < p - 1; ++chi)
      for (u32 psi : {0u, 1u, (p - 1) / 2}) {
        auto c = sigma_twist_coefficients(t, chi, psi);
        auto want = oracle::expansion(o, [&](u32 n) {
          return o.chi(chi, n) * o.chi(psi, (n + 1) % p);
        });
        REQUIRE(c.a.size() == want.size());
        for (u32 rho = 0; rho < p - 1; ++rho) {
          CAPTURE(p);
          CAPTURE(chi);
          CAPTURE(psi);
          CAPTURE(rho);
          REQUIRE(cdist(c.a[rho], want[rho]) < 1e-10);
        }
        // The exceptional index exists iff psi is trivial, and sits at chi.
        if (psi == 0) {
          REQUIRE(c.exceptional.has_value());
          CHECK(*c.exceptional == chi);
          // a_chi = 1 - 1/(p-1) exactly when psi is trivial.
          CHECK(cdist(c.a[chi],
                      oracle::cplx{(p - 2.0) / (p - 1.0), 0.0}) < 1e-12);
        } else {
          CHECK_FALSE(c.exceptional.has_value());
        }
      }
  }
}

TEST_CASE("phi-twist coefficients equal the direct expansion") {
  for (u32 p : {5u, 7u, 13u, 31u}) {
    auto t = build_character_table(p);
    oracle::CharTable o(p);
    for (u32 chi = 1; chi < p - 1; ++chi) {
      auto c = phi_twist_coefficients(t, chi);
      auto want = oracle::expansion(
          o, [&](u32 n) { return o.chi(chi, (n + p - 1) % p); });
      for (u32 rho = 0; rho < p - 1; ++rho) {
        CAPTURE(p);
        CAPTURE(chi);
        CAPTURE(rho);
        REQUIRE(cdist(c.a[rho], want[rho]) < 1e-10);
      }
      // Exceptional coefficient is exactly -chi(-1)/(p-1) at the trivial rho.
      REQUIRE(c.exceptional.has_value());
      CHECK(*c.exceptional == 0);
      cplx eps = -t.chi(chi, p - 1) / static_cast<double>(p - 1);
      CHECK(std::abs(c.a[0] - eps) < 1e-13);
    }
    CHECK_THROWS_AS(phi_twist_coefficients(t, 0), std::invalid_argument);
  }
}

TEST_CASE("non-exceptional coefficients sit on the sqrt(p) circle") {
  // |a_rho| (p-1) = sqrt(p) exactly when the twist is non-degenerate: both
  // Jacobi-sum arguments and their product nontrivial. The remaining cases
  // stay within the bound.
  for (u32 p : {7u, 13u, 31u}) {
    auto t = build_character_table(p);
    const double bound = std::sqrt(static_cast<double>(p)) / (p - 1);
    for (u32 chi = 0; chi < p - 1; ++chi)
      for (u32 psi = 1; psi < p - 1; ++psi) {
        auto c = sigma_twist_coefficients(t, chi, psi);
        REQUIRE_FALSE(c.exceptional.has_value());
        for (u32 rho = 0; rho < p - 1; ++rho) {
          u32 lambda = (chi + (p - 1) - rho) % (p - 1);
          double mag = std::abs(c.a[rho]);
          CAPTURE(p);
          CAPTURE(chi);
          CAPTURE(psi);
          CAPTURE(rho);
          REQUIRE(mag <= bound + 1e-12);
          if (lambda != 0 && (lambda + psi) % (p - 1) != 0)
            REQUIRE(mag == doctest::Approx(bound).epsilon(1e-9));
        }
      }
  }
}

TEST_CASE("Parseval: coefficient energy equals target energy") {
  auto t = build_character_table(101);
  for (auto [chi, psi] : std::vector<std::pair<u32, u32>>{
           {3u, 50u}, {0u, 1u}, {7u, 0u}}) {
    auto c = sigma_twist_coefficients(t, chi, psi);
    double sum = 0;
    for (auto& a : c.a) sum += std::norm(a);
    // Target vanishes at exactly one n in [1, p-1].
    CHECK(sum == doctest::Approx(99.0 / 100.0).epsilon(1e-12));
  }
  auto c = phi_twist_coefficients(t, 11);
  double sum = 0;
  for (auto& a : c.a) sum += std::norm(a);
  CHECK(sum == doctest::Approx(99.0 / 100.0).epsilon(1e-12));
}

TEST_CASE("reconstruction residual is at rounding level") {
  for (u32 p : {5u, 101u, 257u}) {
    auto t = build_character_table(p);
    auto c1 = sigma_twist_coefficients(t, 1 % (p - 1), 2 % (p - 1));
    auto c2 = phi_twist_coefficients(t, 1);
    CAPTURE(p);
    CHECK(verify_reconstruction(c1, t) < 1e-10);
    CHECK(verify_reconstruction(c2, t) < 1e-10);
  }
}

TEST_CASE("character sums match a direct scan with trial-division sigma") {
  for (u32 p : {7u, 11u}) {
    auto t = build_character_table(p);
    oracle::CharTable o(p);
    const u64 x = 5000;
    for (u32 chi : {1u, 3u})
      for (u32 psi : {0u, 2u}) {
        oracle::cplx want{0.0, 0.0};
        for (u64 n = 1; n <= x; ++n)
          want += o.chi(chi, n % p) * o.chi(psi, oracle::sigma(n) % p);
        CAPTURE(p);
        CAPTURE(chi);
        CAPTURE(psi);
        REQUIRE(cdist(char_sum(x, t, chi, psi), want) < 1e-7);
      }
    for (u32 chi : {1u, 4u}) {
      oracle::cplx want{0.0, 0.0};
      for (u64 n = 1; n <= x; ++n) want += o.chi(chi, oracle::phi(n) % p);
      CAPTURE(p);
      CAPTURE(chi);
      REQUIRE(cdist(char_sum_phi(x, t, chi), want) < 1e-7);
    }
  }
}

TEST_CASE("matrix sums agree with individual sums") {
  auto t = build_character_table(11);
  auto m = char_sum_matrix(30000, t);
  REQUIRE(m.p == 11);
  for (u32 chi = 0; chi < 10; ++chi)
    for (u32 psi = 0; psi < 10; ++psi) {
      CAPTURE(chi);
      CAPTURE(psi);
      REQUIRE(std::abs(m.at(chi, psi) - char_sum(30000, t, chi, psi)) <
              1e-8);
    }
}

TEST_CASE("orthogonality assembly recovers exact joint counts") {
  for (u32 p : {5u, 7u}) {
    auto t = build_character_table(p);
    const u64 x = 10000;
    auto j = joint_tally(x, p);
    auto m = char_sum_matrix(x, t);
    for (u32 u = 1; u < p; ++u)
      for (u32 v = 1; v < p; ++v) {
        double got = assemble_orthogonality(x, t, u, v);
        cplx via_matrix = assemble_orthogonality(m, t, u, v);
        double want = static_cast<double>(j.at(u, v));
        CAPTURE(p);
        CAPTURE(u);
        CAPTURE(v);
        REQUIRE(std::abs(got - want) < 1e-6);
        REQUIRE(std::abs(via_matrix - cplx{want, 0.0}) < 1e-6);
      }
    CHECK_THROWS_AS(assemble_orthogonality(m, t, 0, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("sums are bit-identical across thread counts") {
  const int saved = thread_count();
  auto t = build_character_table(13);
  set_thread_count(1);
  cplx s1 = char_sum(200000, t, 1, 5);
  cplx f1 = char_sum_phi(200000, t, 3);
  set_thread_count(7);
  cplx s7 = char_sum(200000, t, 1, 5);
  cplx f7 = char_sum_phi(200000, t, 3);
  set_thread_count(saved);
  CHECK(s1.real() == s7.real());
  CHECK(s1.imag() == s7.imag());
  CHECK(f1.real() == f7.real());
  CHECK(f1.imag() == f7.imag());
}

TEST_CASE("dft helpers invert each other") {
  std::vector<cplx> in = {{1, 0}, {0, 2}, {-3, 1}, {0.5, -0.5}, {2, 2}};
  std::vector<cplx> mid, back;
  detail::dft_forward(in, mid);
  detail::dft_backward(mid, back);
  REQUIRE(back.size() == in.size());
  for (size_t i = 0; i < in.size(); ++i)
    CHECK(std::abs(back[i] / 5.0 - in[i]) < 1e-12);

  // Forward DFT of a delta at 0 is all ones.
  std::vector<cplx> delta = {{1, 0}, {0, 0}, {0, 0}};
  detail::dft_forward(delta, mid);
  for (auto& v : mid) CHECK(std::abs(v - cplx{1.0, 0.0}) < 1e-14);
}
