// Test-side reference implementations, deliberately naive and independent
// of the library's algorithms: trial division instead of sieving, direct
// O(p^2) character sums instead of FFTs, Buchstab recursion instead of
// factor scans. Slow on purpose; used only at small scales.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using u32 = uint32_t;
using u64 = uint64_t;
using cplx = std::complex<double>;

inline std::vector<std::pair<u64, u32>> factor(u64 n) {
  std::vector<std::pair<u64, u32>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    u32 e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 phi(u64 n) {
  u64 r = 1;
  for (auto [q, e] : factor(n)) {
    u64 pe = 1;
    for (u32 i = 1; i < e; ++i) pe *= q;
    r *= pe * (q - 1);
  }
  return r;
}

inline u64 sigma(u64 n) {
  u64 r = 1;
  for (auto [q, e] : factor(n)) {
    u64 s = 1, pw = 1;
    for (u32 i = 0; i < e; ++i) {
      pw *= q;
      s += pw;
    }
    r *= s;
  }
  return r;
}

inline u64 aliquot(u64 n) { return sigma(n) - n; }

inline u64 largest_prime_factor(u64 n) {
  auto f = factor(n);
  return f.empty() ? 1 : f.back().first;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u32> primes_up_to(u32 n) {
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  std::vector<u32> out;
  for (u32 i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    for (u64 j = static_cast<u64>(i) * i; j <= n; j += i) comp[j] = true;
  }
  return out;
}

inline u64 pi(u64 t, const std::vector<u32>& primes) {
  u64 c = 0;
  for (u32 q : primes) {
    if (q > t) break;
    ++c;
  }
  return c;
}

// psi(X, Y) = #{n <= X : P+(n) <= Y} by the Buchstab identity
// psi(X, p_k) = psi(X, p_{k-1}) + psi(X / p_k, p_k), psi(X, 1) = 1.
class SmoothCounter {
 public:
  explicit SmoothCounter(u32 y_max) : primes_(primes_up_to(y_max)) {}

  u64 count(u64 X, u32 Y) const {
    size_t k = 0;
    while (k < primes_.size() && primes_[k] <= Y) ++k;
    return count_rec(X, k);
  }

 private:
  std::vector<u32> primes_;
  mutable std::map<std::pair<u64, size_t>, u64> memo_;

  u64 count_rec(u64 X, size_t k) const {
    if (X == 0) return 0;
    if (k == 0) return 1;
    auto key = std::make_pair(X, k);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    u64 v = count_rec(X, k - 1) + count_rec(X / primes_[k - 1], k);
    memo_[key] = v;
    return v;
  }
};

// Character table built from scratch: primitive root by order test, powers
// accumulated directly, values via std::polar. O(p^2) construction.
struct CharTable {
  u32 p = 0, g = 0;
  std::vector<u32> index;  // discrete log base g; index[1] = 0

  explicit CharTable(u32 p_) : p(p_), index(p_, 0) {
    for (u32 cand = 2; cand < p; ++cand) {
      u32 order = 1, v = cand;
      while (v != 1) {
        v = static_cast<u32>(static_cast<u64>(v) * cand % p);
        ++order;
      }
      if (order == p - 1) {
        g = cand;
        break;
      }
    }
    u64 v = 1;
    for (u32 k = 0; k < p - 1; ++k) {
      index[static_cast<size_t>(v)] = k;
      v = v * g % p;
    }
  }

  cplx chi(u32 j, u64 n) const {
    u64 r = n % p;
    if (r == 0) return {0.0, 0.0};
    double ang = 2.0 * M_PI * (static_cast<u64>(j) * index[r] % (p - 1)) /
                 (p - 1);
    return std::polar(1.0, ang);
  }
};

// Direct expansion coefficients of f over the character group:
// a_rho = (1/(p-1)) sum_{n=1}^{p-1} f(n) conj(rho(n)).
template <typename F>
std::vector<cplx> expansion(const CharTable& t, F&& f) {
  const u32 L = t.p - 1;
  std::vector<cplx> a(L);
  for (u32 rho = 0; rho < L; ++rho) {
    cplx acc{0.0, 0.0};
    for (u32 n = 1; n < t.p; ++n) acc += f(n) * std::conj(t.chi(rho, n));
    a[rho] = acc / static_cast<double>(L);
  }
  return a;
}

// Classical Jacobi sum J(alpha, beta) = sum_t alpha(t) beta(1 - t).
inline cplx jacobi_sum(const CharTable& t, u32 alpha, u32 beta) {
  cplx acc{0.0, 0.0};
  for (u32 v = 0; v < t.p; ++v)
    acc += t.chi(alpha, v) * t.chi(beta, (t.p + 1 - v) % t.p);
  return acc;
}

}  // namespace oracle
