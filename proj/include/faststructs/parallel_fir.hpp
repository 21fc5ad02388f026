#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "faststructs/bilinear.hpp"
#include "faststructs/op_counter.hpp"
#include "faststructs/scalar.hpp"

namespace faststructs {

struct FirFilter {
    std::vector<Scalar> coeffs;  // h[0..N), N >= 1

    std::size_t taps() const { return coeffs.size(); }
};

// L interleaved subsequences; phase p holds indices congruent to p mod L,
// zero-padded so all phases have the same length ceil(|seq|/L).
struct PolyphaseDecomposition {
    std::size_t level = 1;
    std::size_t original_len = 0;
    std::vector<std::vector<Scalar>> phases;
};

PolyphaseDecomposition polyphase_decompose(std::span<const Scalar> seq, std::size_t level);

// Inverse of polyphase_decompose up to the zero padding.
std::vector<Scalar> interleave(const PolyphaseDecomposition& p);

// y[n] = sum_{i<N} h[i]*x[n-i], x[n<0] = 0, run until the response dies out
// (|x|+N-1 outputs). Counts N multiplications per output sample.
std::vector<Scalar> serial_fir(OpCounter& ctx, const FirFilter& filter, std::span<const Scalar> x);

// Block filter built from an L-by-L bilinear algorithm: M subfilters of
// length N/L over pre-combined input phases, post-combined into 2L-1 block
// outputs, the last L-1 delayed one block and wrapped onto the first L-1.
class ParallelFilterState {
public:
    ParallelFilterState(BilinearAlgorithm structure, const FirFilter& filter, std::size_t level);

    std::size_t parallelism() const { return level_; }
    std::size_t taps_padded() const { return taps_padded_; }
    std::size_t subfilter_count() const { return subfilter_coeffs_.size(); }
    const std::vector<std::vector<Scalar>>& subfilter_coeffs() const { return subfilter_coeffs_; }
    const BilinearAlgorithm& structure() const { return structure_; }

    // Consumes exactly L input samples, emits the next L output samples.
    // For L=2 built on karatsuba2 this costs exactly 3N/2 counted
    // multiplications per block.
    std::vector<Scalar> run_block(OpCounter& ctx, std::span<const Scalar> inputs);

    void reset();

private:
    BilinearAlgorithm structure_;
    ScalarRing ring_;
    std::size_t level_ = 1;
    std::size_t taps_padded_ = 0;
    std::size_t window_len_ = 0;
    std::size_t head_ = 0;
    std::vector<std::vector<Scalar>> subfilter_coeffs_;  // M x (N'/L)
    std::vector<std::vector<Scalar>> windows_;           // M ring buffers
    std::vector<Scalar> wrap_delay_;                     // previous block's last L-1 outputs
};

ParallelFilterState derive_parallel_filter(const BilinearAlgorithm& alg, const FirFilter& filter,
                                           std::size_t level);

// Runs a whole stream through the block filter (final partial block padded
// with zeros); returns exactly |x| samples.
std::vector<Scalar> run_parallel(OpCounter& ctx, ParallelFilterState& state,
                                 std::span<const Scalar> x);

// The four-subfilter 2-parallel structure: Y0 = X0H0 + z^-2 X1H1,
// Y1 = X0H1 + X1H0. Costs 2N multiplications per 2-output block.
std::vector<Scalar> direct_2parallel(OpCounter& ctx, const FirFilter& filter,
                                     std::span<const Scalar> x);

}  // namespace faststructs
