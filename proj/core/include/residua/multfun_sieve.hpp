#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "residua/common.hpp"

namespace residua {

enum class MultFn : u8 {
  Phi,      // Euler totient
  Sigma,    // sum of divisors
  Aliquot,  // sigma(n) - n
};

const char* to_string(MultFn fn);
// Accepts "phi", "sigma", "aliquot" (alias "s").
std::optional<MultFn> fn_from_string(const std::string& s);

// Default segment length for streaming scans: cache-resident working set,
// amortized prime-list reuse.
inline constexpr u64 kDefaultSegmentLength = 1ull << 22;

// sigma(n) < 2^63 holds for n < 2^41, so FULL mode accepts hi up to 2^40 + 1
// for SIGMA and ALIQUOT. Larger ranges must use RESIDUE(p) mode.
inline constexpr u64 kFullModeSigmaCap = (1ull << 40) + 1;

// One sieved block [lo, hi). Exactly one of `full` / `residues` is populated:
// FULL mode stores exact u64 values, RESIDUE(p) mode stores values mod p as
// u32 (p may exceed 255).
struct SieveSegment {
  u64 lo = 0, hi = 0;
  MultFn fn = MultFn::Phi;
  std::optional<u32> modulus;  // nullopt = FULL
  std::vector<u64> full;
  std::vector<u32> residues;

  u64 value(u64 n) const {
    size_t i = static_cast<size_t>(n - lo);
    return modulus ? residues[i] : full[i];
  }
};

// Exact values of fn on [lo, hi). Throws range_error on overflow risk.
SieveSegment sieve_range(u64 lo, u64 hi, MultFn fn);

// Values of fn mod p on [lo, hi). p must be an odd prime < 2^31.
SieveSegment sieve_range(u64 lo, u64 hi, MultFn fn, u32 p);

// P+(n) for n in [lo, hi). P+(1) = 1. n is prime iff P+(n) == n and n > 1.
std::vector<u64> largest_prime_factor_range(u64 lo, u64 hi);

struct SmoothQuery {
  double X = 0, Y = 0;
  double u() const;  // log X / log Y, requires Y > 1
};

// Exact #{n <= X : P+(n) <= Y} by full enumeration of P+ over [1, X].
// X above 1e8 is out of scope and rejected.
u64 count_smooth(const SmoothQuery& q);

// X * exp(-u log u), the o(1)-free main term. Trend comparison only.
// Requires u > 1.
double smooth_main_term(const SmoothQuery& q);

namespace detail {

// Per-segment factor scan output. Arrays are parallel over n = lo + i.
// lpf and is_prime are always filled; exactly one of value64 / value32 is
// filled when a function was requested.
struct SegmentScan {
  u64 lo = 0, hi = 0;
  std::vector<u64> value64;   // FULL mode accumulators
  std::vector<u32> value32;   // RESIDUE mode accumulators
  std::vector<u64> lpf;       // largest prime factor, P+(1) = 1
  std::vector<u8> is_prime;
};

struct ScanRequest {
  std::optional<MultFn> fn;  // nullopt: factor structure only
  u32 p = 0;                 // 0 = FULL mode
};

// Factors every n in [lo, hi) by extracting base primes and the residual
// cofactor. base must contain all primes <= sqrt(hi - 1); lo >= 1.
void scan_segment(u64 lo, u64 hi, const ScanRequest& req,
                  std::span<const u32> base, SegmentScan& out);

}  // namespace detail

}  // namespace residua
