#pragma once

#include "residua/common.hpp"

namespace residua {

u64 euler_phi_u64(u64 m);

// Exact #{q prime : q <= t, q = a (mod m)}. Requires gcd(a, m) = 1.
u64 pi_ap(double t, u64 m, u64 a);

// Least prime p with p = a (mod m); scan capped at 1e9.
u64 least_prime_in_ap(u64 m, u64 a);

// Reciprocal sum over primes q <= X in the class a mod m, against the
// prediction loglog(X)/phi(m) + 1/p_{a,m}. Compensated summation keeps the
// absolute error far below the residual scale.
struct APReciprocalSum {
  u64 m = 0, a = 0;
  double X = 0;
  double sum = 0;
  u64 least_prime = 0;
  double predicted = 0;
  double residual = 0;  // sum - predicted
};

APReciprocalSum reciprocal_sum(double X, u64 m, u64 a);

// Product of (1 - 1/q) over primes q <= X with q = klass (mod p).
double mertens_product(double X, u32 p, u32 klass);

// Inclusion-exclusion bracket for #{n <= x : p | phi(n)}:
//   N1 - N2 <= exact_count <= N1 + floor(x/p^2),
// where N1 sums floor(x/q) over primes q = 1 (mod p) up to x and N2 sums
// floor(x/(q1 q2)) over pairs. All quantities exact integers.
struct BonferroniBracket {
  u64 x = 0;
  u32 p = 0;
  u64 n1 = 0, n2 = 0;
  u64 upper_slack = 0;  // floor(x/p^2)
  u64 exact_count = 0;

  bool holds() const {
    return n1 <= n2 + exact_count && exact_count <= n1 + upper_slack;
  }
};

BonferroniBracket bonferroni_bracket(u64 x, u32 p);

}  // namespace residua
