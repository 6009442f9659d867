#pragma once

#include <functional>
#include <vector>

#include "residua/common.hpp"

namespace residua {

// All primes <= limit, ascending. Simple sieve, limit <= 2^32 - 2.
std::vector<u32> primes_up_to(u32 limit);

// Primes needed to fully factor every n < hi by trial extraction,
// i.e. all primes <= floor(sqrt(hi - 1)). hi >= 1.
std::vector<u32> base_primes_for(u64 hi);

// Streams primes in [lo, hi) in increasing order. Segmented, O(sqrt(hi)) memory.
void for_each_prime(u64 lo, u64 hi, const std::function<void(u64)>& fn);

// Deterministic primality by trial division. Intended for moduli and other
// one-off checks, not for bulk ranges.
bool is_prime(u64 n);

// Bitmap of primes <= limit with rank counts, answering pi(t) and membership
// in O(1). Memory is about limit/8 bits plus limit/128 counters.
class PrimeCountTable {
 public:
  explicit PrimeCountTable(u64 limit);

  u64 limit() const { return limit_; }
  bool contains(u64 n) const;
  // #{q prime : q <= t}. t may exceed limit() only by 0; larger throws.
  u64 pi(u64 t) const;

 private:
  u64 limit_;
  std::vector<u64> odd_bits_;   // bit i = 2i+1 is prime
  std::vector<u64> rank_base_;  // primes among odds below word w
};

}  // namespace residua
