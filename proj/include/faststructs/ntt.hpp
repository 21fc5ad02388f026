#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "faststructs/negacyclic.hpp"
#include "faststructs/op_counter.hpp"

namespace faststructs {

// Number-theoretic transform context for 2-parallel pointwise modular
// multiplication in Z_q[x]/(x^n+1). All transforms run at sub-size m = n/2:
// the negacyclic m-point NTT is a psi-twisted cyclic NTT, with psi a
// primitive 2m-th (= n-th) root of unity mod q and omega = psi^2. Root
// orders are verified by exponentiation at construction, never assumed.
// Butterfly counting mirrors the FFT convention (every executed twiddle
// multiplication counts); transforms run inside an "ntt" counting region.
struct NttContext {
    std::uint64_t q = 0;
    std::size_t n = 0;          // full ring size, power of two >= 4
    std::size_t m = 0;          // transform size n/2
    std::uint64_t psi = 0;      // primitive n-th root, psi^m = -1
    std::uint64_t omega = 0;    // psi^2, primitive m-th root
    std::uint64_t m_inv = 0;    // m^-1 mod q

    std::vector<std::uint64_t> fwd_twiddles;   // omega^k, k < m/2
    std::vector<std::uint64_t> inv_twiddles;   // omega^-k, k < m/2
    std::vector<std::uint64_t> twist;          // psi^i, i < m
    std::vector<std::uint64_t> untwist_scaled; // psi^-i * m^-1, i < m
    std::vector<std::uint64_t> wrap_twiddle;   // negacyclic NTT of {0,1,0,...,0}
};

// Requires q prime and q = 1 (mod n) so the n-th root exists.
NttContext make_ntt_context(std::uint64_t q, std::size_t n);

// Forward/inverse negacyclic m-point transform; round-trips exactly and
// satisfies intt(ntt(a) o ntt(b)) = a*b mod (y^m + 1).
std::vector<std::uint64_t> ntt_negacyclic(OpCounter& ctx, const NttContext& c,
                                          std::span<const std::uint64_t> v);
std::vector<std::uint64_t> intt_negacyclic(OpCounter& ctx, const NttContext& c,
                                           std::span<const std::uint64_t> V);

// Even/odd split and four m-point NTTs, then the four-product combination
// P0 = A0oR0 + T o (A1oR1), P1 = A0oR1 + A1oR0: five length-m pointwise
// vector multiplications outside the transforms.
NegacyclicElement ntt_pointwise_direct(OpCounter& ctx, const NttContext& c,
                                       const NegacyclicElement& a, const NegacyclicElement& r);

// Same split through the shared three-product structure: U, V, W plus the
// wraparound twiddle, four length-m pointwise vector multiplications
// outside the transforms.
NegacyclicElement ntt_pointwise_fast2(OpCounter& ctx, const NttContext& c,
                                      const NegacyclicElement& a, const NegacyclicElement& r);

}  // namespace faststructs
