#include "residua/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace residua {

std::vector<u32> primes_up_to(u32 limit) {
  std::vector<u32> out;
  if (limit < 2) return out;
  std::vector<u8> comp(static_cast<size_t>(limit) + 1, 0);
  for (u64 i = 2; i * i <= limit; ++i) {
    if (comp[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) comp[j] = 1;
  }
  out.reserve(static_cast<size_t>(limit > 16 ? limit / (std::log(double(limit)) - 1.1) : 8));
  for (u64 i = 2; i <= limit; ++i)
    if (!comp[i]) out.push_back(static_cast<u32>(i));
  return out;
}

std::vector<u32> base_primes_for(u64 hi) {
  if (hi <= 4) return {};
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(hi - 1)));
  while (r * r > hi - 1) --r;
  while ((r + 1) * (r + 1) <= hi - 1) ++r;
  return primes_up_to(static_cast<u32>(r));
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ull, 3ull, 5ull}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  for (u64 d = 7; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 4) == 0) return false;
  }
  return true;
}

void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn) {
  if (hi <= lo) return;
  if (lo <= 2 && hi > 2) fn(2);
  std::vector<u32> base = base_primes_for(hi);
  constexpr u64 kSeg = 1u << 20;
  u64 start = std::max<u64>(lo, 3);
  if (start % 2 == 0) ++start;
  std::vector<u8> comp(kSeg);
  for (u64 seg_lo = start; seg_lo < hi; seg_lo += 2 * kSeg) {
    u64 seg_hi = std::min(hi, seg_lo + 2 * kSeg);  // odds in [seg_lo, seg_hi)
    u64 count = (seg_hi - seg_lo + 1) / 2;
    std::fill(comp.begin(), comp.begin() + count, u8{0});
    for (u32 q : base) {
      if (q == 2) continue;
      u64 qq = static_cast<u64>(q) * q;
      if (qq >= seg_hi) break;
      u64 first = std::max<u64>(qq, ((seg_lo + q - 1) / q) * q);
      if (first % 2 == 0) first += q;
      for (u64 m = first; m < seg_hi; m += 2 * q) comp[(m - seg_lo) / 2] = 1;
    }
    for (u64 i = 0; i < count; ++i) {
      if (!comp[i]) {
        u64 n = seg_lo + 2 * i;
        if (n >= 3) fn(n);
      }
    }
  }
}

PrimeCountTable::PrimeCountTable(u64 limit) : limit_(limit) {
  require_range(limit >= 1, "PrimeCountTable: limit must be >= 1");
  require_range(limit <= (1ull << 34),
                "PrimeCountTable: limit above 2^34 exceeds the memory envelope");
  u64 n_odd = limit / 2 + 1;  // odds 1,3,...,<=limit
  u64 words = (n_odd + 63) / 64;
  odd_bits_.assign(words, 0);
  for_each_prime(3, limit + 1, [&](u64 q) {
    u64 idx = (q - 1) / 2;
    odd_bits_[idx >> 6] |= 1ull << (idx & 63);
  });
  rank_base_.assign(words + 1, 0);
  u64 run = 0;
  for (u64 w = 0; w < words; ++w) {
    rank_base_[w] = run;
    run += std::popcount(odd_bits_[w]);
  }
  rank_base_[words] = run;
}

bool PrimeCountTable::contains(u64 n) const {
  if (n == 2) return true;
  if (n < 2 || n % 2 == 0 || n > limit_) return false;
  u64 idx = (n - 1) / 2;
  return (odd_bits_[idx >> 6] >> (idx & 63)) & 1;
}

u64 PrimeCountTable::pi(u64 t) const {
  if (t < 2) return 0;
  require_range(t <= limit_, "PrimeCountTable::pi: query beyond table limit");
  if (t == 2) return 1;
  if (t % 2 == 0) --t;
  u64 idx = (t - 1) / 2;  // count odd primes <= t, i.e. bit positions <= idx
  u64 w = idx >> 6, b = idx & 63;
  u64 mask = (b == 63) ? ~0ull : ((1ull << (b + 1)) - 1);
  return 1 + rank_base_[w] + std::popcount(odd_bits_[w] & mask);
}

}  // namespace residua
