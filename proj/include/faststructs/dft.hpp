#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "faststructs/op_counter.hpp"

namespace faststructs {

using Cpx = std::complex<double>;
using CpxVec = std::vector<Cpx>;

// Radix-2 decimation-in-time transform context. Every butterfly twiddle
// multiplication is executed and counted, including W^0 and +-j, one count
// per complex multiplication: a size-M transform always measures
// (M/2)*log2(M) multiplications. Transforms run inside an "fft" counting
// region so their internal additions can be excluded from reported add
// totals. The 1/M scaling of the inverse is not a butterfly and is not
// counted.
class FftContext {
public:
    explicit FftContext(std::size_t size);  // power of two

    std::size_t size() const { return size_; }

    CpxVec forward(OpCounter& ctx, std::span<const Cpx> x) const;
    CpxVec inverse(OpCounter& ctx, std::span<const Cpx> X) const;

private:
    CpxVec run(OpCounter& ctx, std::span<const Cpx> x, bool invert) const;

    std::size_t size_ = 0;
    unsigned log2_ = 0;
    CpxVec twiddles_;  // e^{-2*pi*i*k/M}, k < M/2
};

// T[k] = e^{-2*pi*i*k/half_len}: the forward DFT of the length-half_len
// sequence {0,1,0,...,0}. Multiplying by T in the transform domain is a
// one-step cyclic shift in the coefficient domain; it replaces the parallel
// filter's delay element.
CpxVec wraparound_twiddle(std::size_t half_len);

// O(N^2) circular convolution, the oracle for the pointwise paths.
CpxVec circular_convolution_direct(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x);

// y = IFFT(FFT(h) o FFT(x)): three full-size transforms and N products.
CpxVec pointwise_direct(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x);

// Even/odd split, four half-size FFTs, the three products of the shared
// fast-2 structure plus the wraparound twiddle, two half-size inverse FFTs.
// Counted multiplications: (3N/2)*log2(N) + N/2; counted additions outside
// the transforms: 5N/2. Requires N >= 4.
CpxVec pointwise_fast2(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x);

// Four-phase split driven by the iterated 4-by-4 structure: eight
// quarter-size FFTs, nine products, three wraparound twiddles, four inverse
// FFTs. Counted multiplications: (3N/2)*log2(N). Requires N >= 16.
CpxVec pointwise_fast4(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x);

// max_k |a[k] - b[k]| / max(1, max_k |b[k]|): relative error helper used by
// the oracle comparisons.
double max_rel_error(std::span<const Cpx> a, std::span<const Cpx> b);

}  // namespace faststructs
