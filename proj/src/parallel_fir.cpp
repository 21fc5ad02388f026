#include "faststructs/parallel_fir.hpp"

#include <stdexcept>

namespace faststructs {

PolyphaseDecomposition polyphase_decompose(std::span<const Scalar> seq, std::size_t level) {
    if (level == 0) throw std::invalid_argument("polyphase level must be >= 1");

    PolyphaseDecomposition out;
    out.level = level;
    out.original_len = seq.size();
    const std::size_t phase_len = (seq.size() + level - 1) / level;
    out.phases.assign(level, {});
    if (seq.empty()) return out;

    const Scalar zero = Scalar::zero(seq[0].ring());
    for (std::size_t p = 0; p < level; ++p) {
        auto& phase = out.phases[p];
        phase.reserve(phase_len);
        for (std::size_t k = 0; k < phase_len; ++k) {
            const std::size_t idx = p + k * level;
            phase.push_back(idx < seq.size() ? seq[idx] : zero);
        }
    }
    return out;
}

std::vector<Scalar> interleave(const PolyphaseDecomposition& p) {
    std::vector<Scalar> out;
    if (p.phases.empty() || p.phases[0].empty()) return out;
    const std::size_t phase_len = p.phases[0].size();
    out.reserve(phase_len * p.level);
    for (std::size_t k = 0; k < phase_len; ++k)
        for (std::size_t ph = 0; ph < p.level; ++ph) out.push_back(p.phases[ph][k]);
    return out;
}

std::vector<Scalar> serial_fir(OpCounter& ctx, const FirFilter& filter, std::span<const Scalar> x) {
    if (filter.taps() == 0) throw std::invalid_argument("empty filter");
    if (x.empty()) return {};
    const ScalarRing ring = filter.coeffs[0].ring();
    const Scalar zero = Scalar::zero(ring);
    const std::size_t out_len = x.size() + filter.taps() - 1;

    std::vector<Scalar> y;
    y.reserve(out_len);
    for (std::size_t n = 0; n < out_len; ++n) {
        Scalar acc = zero;
        for (std::size_t i = 0; i < filter.taps(); ++i) {
            const Scalar& xv = (n >= i && n - i < x.size()) ? x[n - i] : zero;
            acc = ring_add(ctx, acc, ring_mul(ctx, filter.coeffs[i], xv));
        }
        y.push_back(acc);
    }
    return y;
}

namespace {

std::vector<Scalar> pad_to_multiple(std::vector<Scalar> v, std::size_t level, const Scalar& zero) {
    while (v.size() % level != 0) v.push_back(zero);
    return v;
}

}  // namespace

ParallelFilterState::ParallelFilterState(BilinearAlgorithm structure, const FirFilter& filter,
                                         std::size_t level)
    : structure_(std::move(structure)) {
    if (level == 0) throw std::invalid_argument("parallelism level must be >= 1");
    if (static_cast<std::size_t>(structure_.input_len) != level)
        throw std::invalid_argument("structure input length != parallelism level");
    if (filter.taps() == 0) throw std::invalid_argument("empty filter");

    ring_ = filter.coeffs[0].ring();
    level_ = level;
    const Scalar zero = Scalar::zero(ring_);
    std::vector<Scalar> padded = pad_to_multiple(filter.coeffs, level, zero);
    taps_padded_ = padded.size();
    window_len_ = taps_padded_ / level;

    // Coefficient combinations G_m = sum_p pre_h[m][p] * H_p are fixed per
    // filter, so they are precomputed here and not charged per block.
    PolyphaseDecomposition hp = polyphase_decompose(padded, level);
    OpCounter setup("derive");
    for (int m = 0; m < structure_.mult_count; ++m) {
        std::vector<Scalar> combined(window_len_, zero);
        for (std::size_t p = 0; p < level; ++p) {
            const std::int64_t e = structure_.pre_h.at(m, static_cast<int>(p));
            if (e == 0) continue;
            for (std::size_t t = 0; t < window_len_; ++t) {
                Scalar term = hp.phases[p][t];
                if (e == -1) {
                    term = ring_neg(term);
                } else if (e != 1) {
                    term = ring_mul(setup, Scalar::from_int(ring_, e), term);
                }
                combined[t] = ring_add(setup, combined[t], term);
            }
        }
        subfilter_coeffs_.push_back(std::move(combined));
    }

    windows_.assign(subfilter_coeffs_.size(), std::vector<Scalar>(window_len_, zero));
    wrap_delay_.assign(level_ - 1, zero);
}

void ParallelFilterState::reset() {
    const Scalar zero = Scalar::zero(ring_);
    for (auto& w : windows_) std::fill(w.begin(), w.end(), zero);
    std::fill(wrap_delay_.begin(), wrap_delay_.end(), zero);
    head_ = 0;
}

std::vector<Scalar> ParallelFilterState::run_block(OpCounter& ctx, std::span<const Scalar> inputs) {
    if (inputs.size() != level_) throw std::invalid_argument("run_block: expected exactly L samples");
    const Scalar zero = Scalar::zero(ring_);
    const int m_count = structure_.mult_count;

    // Combined input phases U_m = sum_r pre_x[m][r] * x_r pushed into each
    // subfilter's delay line.
    head_ = (head_ + 1) % window_len_;
    for (int m = 0; m < m_count; ++m) {
        Scalar u = zero;
        bool first = true;
        for (std::size_t r = 0; r < level_; ++r) {
            const std::int64_t e = structure_.pre_x.at(m, static_cast<int>(r));
            if (e == 0) continue;
            Scalar term = inputs[r];
            if (e == -1) {
                term = ring_neg(term);
            } else if (e != 1) {
                term = ring_mul(ctx, Scalar::from_int(ring_, e), term);
            }
            u = first ? term : ring_add(ctx, u, term);
            first = false;
        }
        windows_[m][head_] = first ? zero : u;
    }

    // M subfilter taps: the only multiplications the block structure charges.
    std::vector<Scalar> products;
    products.reserve(static_cast<std::size_t>(m_count));
    for (int m = 0; m < m_count; ++m) {
        Scalar acc = zero;
        for (std::size_t t = 0; t < window_len_; ++t) {
            const Scalar& xv = windows_[m][(head_ + window_len_ - t) % window_len_];
            acc = ring_add(ctx, acc, ring_mul(ctx, subfilter_coeffs_[m][t], xv));
        }
        products.push_back(acc);
    }

    std::vector<Scalar> block = apply_matrix(ctx, structure_.post, products);

    // Wraparound: previous block's last L-1 outputs land on this block's
    // first L-1.
    std::vector<Scalar> out(level_, zero);
    for (std::size_t j = 0; j + 1 < level_; ++j) out[j] = ring_add(ctx, block[j], wrap_delay_[j]);
    out[level_ - 1] = block[level_ - 1];
    for (std::size_t j = 0; j + 1 < level_; ++j) wrap_delay_[j] = block[level_ + j];
    return out;
}

ParallelFilterState derive_parallel_filter(const BilinearAlgorithm& alg, const FirFilter& filter,
                                           std::size_t level) {
    return ParallelFilterState(alg, filter, level);
}

std::vector<Scalar> run_parallel(OpCounter& ctx, ParallelFilterState& state,
                                 std::span<const Scalar> x) {
    if (x.empty()) return {};
    const std::size_t level = state.parallelism();
    const Scalar zero = Scalar::zero(x[0].ring());
    std::vector<Scalar> y;
    y.reserve(x.size() + level);
    std::vector<Scalar> block(level, zero);
    for (std::size_t base = 0; base < x.size(); base += level) {
        for (std::size_t j = 0; j < level; ++j)
            block[j] = base + j < x.size() ? x[base + j] : zero;
        std::vector<Scalar> out = state.run_block(ctx, block);
        y.insert(y.end(), out.begin(), out.end());
    }
    y.resize(x.size(), zero);
    return y;
}

std::vector<Scalar> direct_2parallel(OpCounter& ctx, const FirFilter& filter,
                                     std::span<const Scalar> x) {
    if (filter.taps() == 0) throw std::invalid_argument("empty filter");
    if (x.empty()) return {};
    const ScalarRing ring = filter.coeffs[0].ring();
    const Scalar zero = Scalar::zero(ring);

    std::vector<Scalar> padded = pad_to_multiple(filter.coeffs, 2, zero);
    PolyphaseDecomposition hp = polyphase_decompose(padded, 2);
    const std::size_t w = padded.size() / 2;

    std::vector<std::vector<Scalar>> win(2, std::vector<Scalar>(w, zero));
    std::size_t head = 0;
    Scalar delayed_h1x1 = zero;  // z^-2 register on the H1X1 subfilter output

    auto dot = [&](const std::vector<Scalar>& coeffs, const std::vector<Scalar>& window,
                   std::size_t head_pos) {
        Scalar acc = zero;
        for (std::size_t t = 0; t < w; ++t) {
            const Scalar& xv = window[(head_pos + w - t) % w];
            acc = ring_add(ctx, acc, ring_mul(ctx, coeffs[t], xv));
        }
        return acc;
    };

    std::vector<Scalar> y;
    y.reserve(x.size() + 2);
    for (std::size_t base = 0; base < x.size(); base += 2) {
        head = (head + 1) % w;
        win[0][head] = x[base];
        win[1][head] = base + 1 < x.size() ? x[base + 1] : zero;

        Scalar h0x0 = dot(hp.phases[0], win[0], head);
        Scalar h1x1 = dot(hp.phases[1], win[1], head);
        Scalar h1x0 = dot(hp.phases[1], win[0], head);
        Scalar h0x1 = dot(hp.phases[0], win[1], head);

        y.push_back(ring_add(ctx, h0x0, delayed_h1x1));
        y.push_back(ring_add(ctx, h0x1, h1x0));
        delayed_h1x1 = h1x1;
    }
    y.resize(x.size(), zero);
    return y;
}

}  // namespace faststructs
