#include "faststructs/dft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "faststructs/fast2_skeleton.hpp"

namespace faststructs {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(std::size_t n) {
    unsigned l = 0;
    while ((std::size_t{1} << l) < n) ++l;
    return l;
}

inline Cpx cmul(OpCounter& ctx, const Cpx& a, const Cpx& b) {
    ctx.count_mul();
    return a * b;
}
inline Cpx cadd(OpCounter& ctx, const Cpx& a, const Cpx& b) {
    ctx.count_add();
    return a + b;
}
inline Cpx csub(OpCounter& ctx, const Cpx& a, const Cpx& b) {
    ctx.count_add();
    return a - b;
}

CpxVec vec_mul(OpCounter& ctx, const CpxVec& a, const CpxVec& b) {
    CpxVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = cmul(ctx, a[i], b[i]);
    return out;
}
CpxVec vec_add(OpCounter& ctx, const CpxVec& a, const CpxVec& b) {
    CpxVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = cadd(ctx, a[i], b[i]);
    return out;
}
CpxVec vec_sub(OpCounter& ctx, const CpxVec& a, const CpxVec& b) {
    CpxVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = csub(ctx, a[i], b[i]);
    return out;
}

CpxVec phase_of(std::span<const Cpx> v, std::size_t level, std::size_t p) {
    CpxVec out;
    out.reserve(v.size() / level);
    for (std::size_t i = p; i < v.size(); i += level) out.push_back(v[i]);
    return out;
}

CpxVec interleave_phases(const std::vector<CpxVec>& phases) {
    const std::size_t level = phases.size();
    CpxVec out(level * phases[0].size());
    for (std::size_t k = 0; k < phases[0].size(); ++k)
        for (std::size_t p = 0; p < level; ++p) out[k * level + p] = phases[p][k];
    return out;
}

}  // namespace

FftContext::FftContext(std::size_t size) : size_(size) {
    if (!power_of_two(size) || size < 2) throw std::invalid_argument("FFT size must be a power of two >= 2");
    log2_ = log2_exact(size);
    twiddles_.resize(size / 2);
    for (std::size_t k = 0; k < size / 2; ++k)
        twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(size));
}

CpxVec FftContext::run(OpCounter& ctx, std::span<const Cpx> x, bool invert) const {
    if (x.size() != size_) throw std::invalid_argument("FFT input length mismatch");

    CpxVec a(size_);
    for (std::size_t i = 0; i < size_; ++i) {
        std::size_t rev = 0;
        for (unsigned b = 0; b < log2_; ++b)
            if (i & (std::size_t{1} << b)) rev |= std::size_t{1} << (log2_ - 1 - b);
        a[rev] = x[i];
    }

    OpCounter::Scope scope(ctx, "fft");
    for (std::size_t len = 2; len <= size_; len <<= 1) {
        const std::size_t step = size_ / len;
        for (std::size_t base = 0; base < size_; base += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                Cpx w = twiddles_[step * j];
                if (invert) w = std::conj(w);
                const Cpx t = cmul(ctx, w, a[base + j + len / 2]);
                const Cpx u = a[base + j];
                a[base + j] = cadd(ctx, u, t);
                a[base + j + len / 2] = csub(ctx, u, t);
            }
        }
    }
    if (invert) {
        // scaling is not a butterfly multiplication and stays uncounted
        const double inv = 1.0 / static_cast<double>(size_);
        for (Cpx& v : a) v *= inv;
    }
    return a;
}

CpxVec FftContext::forward(OpCounter& ctx, std::span<const Cpx> x) const { return run(ctx, x, false); }
CpxVec FftContext::inverse(OpCounter& ctx, std::span<const Cpx> X) const { return run(ctx, X, true); }

CpxVec wraparound_twiddle(std::size_t half_len) {
    CpxVec t(half_len);
    for (std::size_t k = 0; k < half_len; ++k)
        t[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) /
                                   static_cast<double>(half_len));
    return t;
}

CpxVec circular_convolution_direct(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x) {
    if (h.size() != x.size()) throw std::invalid_argument("circular convolution size mismatch");
    const std::size_t n = h.size();
    CpxVec y(n, Cpx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            y[(i + j) % n] = cadd(ctx, y[(i + j) % n], cmul(ctx, h[i], x[j]));
    return y;
}

CpxVec pointwise_direct(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x) {
    if (h.size() != x.size()) throw std::invalid_argument("pointwise size mismatch");
    FftContext fft(h.size());
    const CpxVec hf = fft.forward(ctx, h);
    const CpxVec xf = fft.forward(ctx, x);
    return fft.inverse(ctx, vec_mul(ctx, hf, xf));
}

namespace {

// Skeleton ops over half-size spectra: wrap is pointwise multiplication by
// the transform of {0,1,0,...,0}.
struct DftOps {
    using Value = CpxVec;
    const CpxVec* twiddle;

    Value mul(OpCounter& ctx, const Value& a, const Value& b) const { return vec_mul(ctx, a, b); }
    Value add(OpCounter& ctx, const Value& a, const Value& b) const { return vec_add(ctx, a, b); }
    Value sub(OpCounter& ctx, const Value& a, const Value& b) const { return vec_sub(ctx, a, b); }
    Value wrap(OpCounter& ctx, const Value& v) const { return vec_mul(ctx, *twiddle, v); }
};

}  // namespace

CpxVec pointwise_fast2(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x) {
    if (h.size() != x.size()) throw std::invalid_argument("pointwise size mismatch");
    const std::size_t n = h.size();
    if (n < 4 || !power_of_two(n)) throw std::invalid_argument("fast2 requires a power-of-two N >= 4");
    const std::size_t half = n / 2;

    FftContext fft(half);
    const CpxVec h0 = fft.forward(ctx, phase_of(h, 2, 0));
    const CpxVec h1 = fft.forward(ctx, phase_of(h, 2, 1));
    const CpxVec x0 = fft.forward(ctx, phase_of(x, 2, 0));
    const CpxVec x1 = fft.forward(ctx, phase_of(x, 2, 1));

    const CpxVec twiddle = wraparound_twiddle(half);
    DftOps ops{&twiddle};
    Fast2Result<DftOps> r = fast2_apply(ctx, ops, h0, h1, x0, x1);

    const CpxVec y0 = fft.inverse(ctx, r.p0);
    const CpxVec y1 = fft.inverse(ctx, r.p1);
    return interleave_phases({y0, y1});
}

CpxVec pointwise_fast4(OpCounter& ctx, std::span<const Cpx> h, std::span<const Cpx> x) {
    if (h.size() != x.size()) throw std::invalid_argument("pointwise size mismatch");
    const std::size_t n = h.size();
    if (n < 16 || !power_of_two(n)) throw std::invalid_argument("fast4 requires a power-of-two N >= 16");
    const std::size_t quarter = n / 4;

    FftContext fft(quarter);
    std::vector<CpxVec> hf(4), xf(4);
    for (std::size_t p = 0; p < 4; ++p) {
        hf[p] = fft.forward(ctx, phase_of(h, 4, p));
        xf[p] = fft.forward(ctx, phase_of(x, 4, p));
    }

    // Nested pre-combination of the iterated 2-by-2 structure: inner P2 on
    // each phase pair, then outer P2 across the pairs.
    auto combine = [&](const std::vector<CpxVec>& f) {
        std::vector<CpxVec> inner(6);
        for (std::size_t g = 0; g < 2; ++g) {
            inner[3 * g + 0] = f[2 * g + 0];
            inner[3 * g + 1] = vec_add(ctx, f[2 * g + 0], f[2 * g + 1]);
            inner[3 * g + 2] = f[2 * g + 1];
        }
        std::vector<CpxVec> u(9);
        for (std::size_t i = 0; i < 3; ++i) {
            u[i] = inner[i];
            u[3 + i] = vec_add(ctx, inner[i], inner[3 + i]);
            u[6 + i] = inner[3 + i];
        }
        return u;
    };
    const std::vector<CpxVec> hu = combine(hf);
    const std::vector<CpxVec> xu = combine(xf);

    std::vector<CpxVec> w(9);
    for (std::size_t m = 0; m < 9; ++m) w[m] = vec_mul(ctx, hu[m], xu[m]);

    // Nested post-combination: inner Q2 per outer product group, outer Q2
    // across groups, then overlap-add of the three 3-point blocks.
    std::vector<std::vector<CpxVec>> c(3);
    for (std::size_t g = 0; g < 3; ++g) {
        c[g].resize(3);
        c[g][0] = w[3 * g + 0];
        c[g][1] = vec_sub(ctx, vec_sub(ctx, w[3 * g + 1], w[3 * g + 0]), w[3 * g + 2]);
        c[g][2] = w[3 * g + 2];
    }
    std::vector<std::vector<CpxVec>> blk(3);
    blk[0] = c[0];
    blk[2] = c[2];
    blk[1].resize(3);
    for (std::size_t i = 0; i < 3; ++i)
        blk[1][i] = vec_sub(ctx, vec_sub(ctx, c[1][i], c[0][i]), c[2][i]);

    std::vector<CpxVec> s(7);
    s[0] = blk[0][0];
    s[1] = blk[0][1];
    s[2] = vec_add(ctx, blk[0][2], blk[1][0]);
    s[3] = blk[1][1];
    s[4] = vec_add(ctx, blk[1][2], blk[2][0]);
    s[5] = blk[2][1];
    s[6] = blk[2][2];

    const CpxVec twiddle = wraparound_twiddle(quarter);
    std::vector<CpxVec> yf(4);
    for (std::size_t j = 0; j < 3; ++j)
        yf[j] = vec_add(ctx, s[j], vec_mul(ctx, twiddle, s[j + 4]));
    yf[3] = s[3];

    std::vector<CpxVec> yp(4);
    for (std::size_t p = 0; p < 4; ++p) yp[p] = fft.inverse(ctx, yf[p]);
    return interleave_phases(yp);
}

double max_rel_error(std::span<const Cpx> a, std::span<const Cpx> b) {
    double max_diff = 0.0;
    double max_mag = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        max_diff = std::max(max_diff, std::abs(a[i] - b[i]));
        max_mag = std::max(max_mag, std::abs(b[i]));
    }
    return max_diff / max_mag;
}

}  // namespace faststructs
