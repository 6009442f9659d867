#include "residua/prime_ap.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "residua/primes.hpp"
#include "residua/residue_tally.hpp"

namespace residua {

namespace {

constexpr u64 kLeastPrimeCap = 1'000'000'000ull;
constexpr double kPiApCap = 4e9;

}  // namespace

u64 euler_phi_u64(u64 m) {
  require(m >= 1, "euler_phi: m must be >= 1");
  u64 result = m;
  u64 n = m;
  for (u64 q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      result -= result / q;
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

u64 pi_ap(double t, u64 m, u64 a) {
  require(m >= 1, "pi_ap: m must be >= 1");
  a %= m;
  require(std::gcd(a, m) == 1, "pi_ap: a must be coprime to m");
  require_range(t <= kPiApCap, "pi_ap: t above 4e9 out of scope");
  if (t < 2) return 0;
  const u64 limit = static_cast<u64>(t);
  u64 count = 0;
  for_each_prime(2, limit + 1, [&](u64 q) {
    if (q % m == a) ++count;
  });
  return count;
}

u64 least_prime_in_ap(u64 m, u64 a) {
  require(m >= 1, "least_prime_in_ap: m must be >= 1");
  a %= m;
  require(std::gcd(a, m) == 1, "least_prime_in_ap: a must be coprime to m");
  u64 n = a == 0 ? m : a;  // m = 1 degenerates to a = 0
  if (n < 2) n += m;
  for (; n <= kLeastPrimeCap; n += m) {
    if (is_prime(n)) return n;
  }
  throw range_error("least_prime_in_ap: no prime below 1e9 in the class");
}

APReciprocalSum reciprocal_sum(double X, u64 m, u64 a) {
  require(m >= 3, "reciprocal_sum: m must be >= 3");
  require(X >= static_cast<double>(m), "reciprocal_sum: X must be >= m");
  require_range(X <= kPiApCap, "reciprocal_sum: X above 4e9 out of scope");
  a %= m;
  require(std::gcd(a, m) == 1, "reciprocal_sum: a must be coprime to m");

  APReciprocalSum out;
  out.m = m;
  out.a = a;
  out.X = X;

  const u64 limit = static_cast<u64>(X);
  double sum = 0.0, comp = 0.0;  // Kahan compensation
  u64 least = 0;
  for_each_prime(2, limit + 1, [&](u64 q) {
    if (q % m != a) return;
    if (least == 0) least = q;
    double term = 1.0 / static_cast<double>(q) - comp;
    double t = sum + term;
    comp = (t - sum) - term;
    sum = t;
  });
  out.sum = sum;
  out.least_prime = least ? least : least_prime_in_ap(m, a);
  out.predicted = std::log(std::log(X)) / static_cast<double>(euler_phi_u64(m)) +
                  1.0 / static_cast<double>(out.least_prime);
  out.residual = out.sum - out.predicted;
  return out;
}

double mertens_product(double X, u32 p, u32 klass) {
  require(p >= 2, "mertens_product: p must be >= 2");
  klass %= p;
  require(std::gcd<u64>(klass, p) == 1, "mertens_product: class must be coprime to p");
  require_range(X <= kPiApCap, "mertens_product: X above 4e9 out of scope");
  if (X < 2) return 1.0;
  const u64 limit = static_cast<u64>(X);
  double prod = 1.0;
  for_each_prime(2, limit + 1, [&](u64 q) {
    if (q % p == klass) prod *= 1.0 - 1.0 / static_cast<double>(q);
  });
  return prod;
}

BonferroniBracket bonferroni_bracket(u64 x, u32 p) {
  require(p >= 3 && is_prime(p), "bonferroni_bracket: p must be an odd prime");
  require_range(x <= 1'000'000'000ull, "bonferroni_bracket: x above 1e9 out of scope");

  BonferroniBracket b;
  b.x = x;
  b.p = p;
  b.upper_slack = x / (static_cast<u64>(p) * p);

  std::vector<u64> class_primes;
  if (x >= p) {
    for_each_prime(2, x + 1, [&](u64 q) {
      if (q % p == 1) {
        class_primes.push_back(q);
        b.n1 += x / q;
      }
    });
  }
  for (size_t i = 0; i < class_primes.size(); ++i) {
    const u64 qi = class_primes[i];
    if (qi * qi > x) break;
    for (size_t j = i + 1; j < class_primes.size(); ++j) {
      const u64 prod = qi * class_primes[j];
      if (prod > x) break;
      b.n2 += x / prod;
    }
  }
  b.exact_count = x >= p ? count_p_divides_phi(x, p) : 0;
  return b;
}

}  // namespace residua
