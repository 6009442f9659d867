#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "residua/common.hpp"

namespace residua {

using cplx = std::complex<double>;

// Multiplicative characters mod p realized through the smallest primitive
// root g: character j maps n to exp(2*pi*i * j * index[n] / (p-1)), where
// g^index[n] = n (mod p). Character 0 is the trivial character; every
// character vanishes on multiples of p.
struct CharacterTable {
  u32 p = 0;
  u32 g = 0;
  u32 order = 0;                // p - 1
  std::vector<u32> index;       // size p; index[0] unused, index[1] = 0
  std::vector<cplx> unit;       // unit[k] = exp(2*pi*i*k/(p-1)), size p - 1
  std::vector<u32> pow_of_g;    // pow_of_g[k] = g^k mod p, size p - 1

  // Character chi_j at residue or integer n.
  cplx chi(u32 j, u64 n) const {
    u64 r = n % p;
    if (r == 0) return {0.0, 0.0};
    return unit[(static_cast<u64>(j) * index[static_cast<size_t>(r)]) % order];
  }
};

// p must be an odd prime <= 1e7 (primitive-root search by trial).
CharacterTable build_character_table(u32 p);

enum class TwistKind : u8 {
  SigmaTwist,  // decomposes chi(n) psi(n+1)
  PhiTwist,    // decomposes chi(n-1)
};

// Expansion coefficients a_rho with chi(n)psi(n+1) = sum_rho a_rho rho(n)
// (SigmaTwist) or chi(n-1) = sum_rho a_rho rho(n) (PhiTwist). All
// non-exceptional coefficients obey |a_rho| <= sqrt(p)/(p-1); every
// coefficient obeys |a_rho| < 1.
struct CoefficientVector {
  TwistKind kind = TwistKind::SigmaTwist;
  u32 p = 0;
  u32 chi = 0;
  std::optional<u32> psi;            // absent for PhiTwist
  std::vector<cplx> a;               // size p - 1, indexed by character rho
  std::optional<u32> exceptional;    // index exempt from the sqrt(p) bound
};

// Coefficients of chi(n)psi(n+1). The exceptional index is structural:
// present iff psi is trivial, located at rho = chi.
CoefficientVector sigma_twist_coefficients(const CharacterTable& t, u32 chi,
                                           u32 psi);

// Coefficients of chi(n-1) for nontrivial chi. The exceptional index is the
// trivial character, where a_eps = -chi(-1)/(p-1) exactly.
CoefficientVector phi_twist_coefficients(const CharacterTable& t, u32 chi);

// Max over n in 1..p-1 of |target(n) - sum_rho a_rho rho(n)|.
double verify_reconstruction(const CoefficientVector& c,
                             const CharacterTable& t);

// Exact sum over n <= x of chi(n) psi(sigma(n)), streamed from residue
// segments. Deterministic at any thread count.
cplx char_sum(u64 x, const CharacterTable& t, u32 chi, u32 psi);

// The phi variant: sum over n <= x of chi(phi(n)).
cplx char_sum_phi(u64 x, const CharacterTable& t, u32 chi);

// All (chi, psi) sums from one sieve pass. Row-major (p-1) x (p-1).
struct CharSumMatrix {
  u32 p = 0;
  u64 x = 0;
  std::vector<cplx> s;
  const cplx& at(u32 chi, u32 psi) const {
    return s[static_cast<size_t>(chi) * (p - 1) + psi];
  }
};
CharSumMatrix char_sum_matrix(u64 x, const CharacterTable& t);

// (1/(p-1)^2) sum_{chi,psi} conj(chi(u)) conj(psi(v)) S[chi][psi]. Recovers
// #{n <= x : n = u, sigma(n) = v (mod p)} up to double rounding; the real
// part is returned by the scalar overload.
cplx assemble_orthogonality(const CharSumMatrix& m, const CharacterTable& t,
                            u32 u, u32 v);
double assemble_orthogonality(u64 x, const CharacterTable& t, u32 u, u32 v);

namespace detail {

// Unnormalized DFTs: forward uses kernel exp(-2*pi*i*jk/n), backward
// exp(+2*pi*i*jk/n). Any length >= 1.
void dft_forward(const std::vector<cplx>& in, std::vector<cplx>& out);
void dft_backward(const std::vector<cplx>& in, std::vector<cplx>& out);

}  // namespace detail

}  // namespace residua
