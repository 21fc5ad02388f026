#include "faststructs/ntt.hpp"

#include <stdexcept>
#include <string>

#include "faststructs/fast2_skeleton.hpp"
#include "faststructs/modular.hpp"

namespace faststructs {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

unsigned log2_exact(std::size_t n) {
    unsigned l = 0;
    while ((std::size_t{1} << l) < n) ++l;
    return l;
}

inline std::uint64_t counted_mul(OpCounter& ctx, std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    ctx.count_mul();
    return mul_mod(a, b, q);
}
inline std::uint64_t counted_add(OpCounter& ctx, std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    ctx.count_add();
    return add_mod(a, b, q);
}
inline std::uint64_t counted_sub(OpCounter& ctx, std::uint64_t a, std::uint64_t b, std::uint64_t q) {
    ctx.count_add();
    return sub_mod(a, b, q);
}

using U64Vec = std::vector<std::uint64_t>;

U64Vec vec_mul(OpCounter& ctx, const U64Vec& a, const U64Vec& b, std::uint64_t q) {
    U64Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = counted_mul(ctx, a[i], b[i], q);
    return out;
}
U64Vec vec_add(OpCounter& ctx, const U64Vec& a, const U64Vec& b, std::uint64_t q) {
    U64Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = counted_add(ctx, a[i], b[i], q);
    return out;
}
U64Vec vec_sub(OpCounter& ctx, const U64Vec& a, const U64Vec& b, std::uint64_t q) {
    U64Vec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = counted_sub(ctx, a[i], b[i], q);
    return out;
}

// Cyclic radix-2 transform of size c.m with the given twiddle table.
void cyclic_pass(OpCounter& ctx, U64Vec& a, const U64Vec& twiddles, std::uint64_t q) {
    const std::size_t m = a.size();
    const unsigned logm = log2_exact(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t rev = 0;
        for (unsigned b = 0; b < logm; ++b)
            if (i & (std::size_t{1} << b)) rev |= std::size_t{1} << (logm - 1 - b);
        if (rev > i) std::swap(a[i], a[rev]);
    }
    for (std::size_t len = 2; len <= m; len <<= 1) {
        const std::size_t step = m / len;
        for (std::size_t base = 0; base < m; base += len) {
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::uint64_t t = counted_mul(ctx, twiddles[step * j], a[base + j + len / 2], q);
                const std::uint64_t u = a[base + j];
                a[base + j] = counted_add(ctx, u, t, q);
                a[base + j + len / 2] = counted_sub(ctx, u, t, q);
            }
        }
    }
}

void check_element(const NttContext& c, const NegacyclicElement& e, const char* what) {
    if (e.size() != c.n) throw std::invalid_argument(std::string(what) + ": length != n");
    if (e.ring().kind != RingKind::ModQ || e.ring().modulus != c.q)
        throw std::invalid_argument(std::string(what) + ": ring does not match context");
}

U64Vec residues_of(const NegacyclicElement& e) {
    U64Vec out;
    out.reserve(e.size());
    for (const Scalar& s : e.coeffs) out.push_back(s.as_mod().value);
    return out;
}

}  // namespace

NttContext make_ntt_context(std::uint64_t q, std::size_t n) {
    if (!is_prime_u64(q)) throw std::invalid_argument("modulus must be prime, got " + std::to_string(q));
    if (!power_of_two(n) || n < 4) throw std::invalid_argument("ring size must be a power of two >= 4");
    if ((q - 1) % n != 0)
        throw std::invalid_argument("no suitable root: q must satisfy q = 1 (mod n), got q=" +
                                    std::to_string(q) + " n=" + std::to_string(n));

    NttContext c;
    c.q = q;
    c.n = n;
    c.m = n / 2;

    // psi = g^((q-1)/n) for the first candidate with exact order n; verified
    // by checking psi^(n/2) = -1 via repeated squaring.
    for (std::uint64_t cand = 2; cand < q; ++cand) {
        const std::uint64_t psi = pow_mod(cand, (q - 1) / n, q);
        if (pow_mod(psi, n / 2, q) == q - 1) {
            c.psi = psi;
            break;
        }
    }
    if (c.psi == 0) throw std::invalid_argument("no suitable root found");  // unreachable for prime q

    c.omega = mul_mod(c.psi, c.psi, q);
    if (pow_mod(c.omega, c.m, q) != 1 || (c.m >= 2 && pow_mod(c.omega, c.m / 2, q) == 1))
        throw std::logic_error("root order check failed");
    c.m_inv = inv_mod(c.m % q, q);

    const std::uint64_t psi_inv = inv_mod(c.psi, q);
    const std::uint64_t omega_inv = inv_mod(c.omega, q);
    c.fwd_twiddles.resize(c.m / 2);
    c.inv_twiddles.resize(c.m / 2);
    std::uint64_t w = 1, wi = 1;
    for (std::size_t k = 0; k < c.m / 2; ++k) {
        c.fwd_twiddles[k] = w;
        c.inv_twiddles[k] = wi;
        w = mul_mod(w, c.omega, q);
        wi = mul_mod(wi, omega_inv, q);
    }
    c.twist.resize(c.m);
    c.untwist_scaled.resize(c.m);
    std::uint64_t p = 1, pi = c.m_inv;
    for (std::size_t i = 0; i < c.m; ++i) {
        c.twist[i] = p;
        c.untwist_scaled[i] = pi;
        p = mul_mod(p, c.psi, q);
        pi = mul_mod(pi, psi_inv, q);
    }

    U64Vec delta1(c.m, 0);
    delta1[1 % c.m] = 1;
    OpCounter setup("ntt-setup");
    c.wrap_twiddle = ntt_negacyclic(setup, c, delta1);
    return c;
}

std::vector<std::uint64_t> ntt_negacyclic(OpCounter& ctx, const NttContext& c,
                                          std::span<const std::uint64_t> v) {
    if (v.size() != c.m) throw std::invalid_argument("ntt input length != m");
    OpCounter::Scope scope(ctx, "ntt");
    U64Vec a(c.m);
    for (std::size_t i = 0; i < c.m; ++i) a[i] = counted_mul(ctx, v[i], c.twist[i], c.q);
    cyclic_pass(ctx, a, c.fwd_twiddles, c.q);
    return a;
}

std::vector<std::uint64_t> intt_negacyclic(OpCounter& ctx, const NttContext& c,
                                           std::span<const std::uint64_t> V) {
    if (V.size() != c.m) throw std::invalid_argument("intt input length != m");
    OpCounter::Scope scope(ctx, "ntt");
    U64Vec a(V.begin(), V.end());
    cyclic_pass(ctx, a, c.inv_twiddles, c.q);
    for (std::size_t i = 0; i < c.m; ++i) a[i] = counted_mul(ctx, a[i], c.untwist_scaled[i], c.q);
    return a;
}

namespace {

struct NttOps {
    using Value = U64Vec;
    const NttContext* c;

    Value mul(OpCounter& ctx, const Value& a, const Value& b) const { return vec_mul(ctx, a, b, c->q); }
    Value add(OpCounter& ctx, const Value& a, const Value& b) const { return vec_add(ctx, a, b, c->q); }
    Value sub(OpCounter& ctx, const Value& a, const Value& b) const { return vec_sub(ctx, a, b, c->q); }
    Value wrap(OpCounter& ctx, const Value& v) const { return vec_mul(ctx, c->wrap_twiddle, v, c->q); }
};

struct PhaseSpectra {
    U64Vec even, odd;
};

PhaseSpectra transform_phases(OpCounter& ctx, const NttContext& c, const NegacyclicElement& e) {
    const U64Vec r = residues_of(e);
    U64Vec even(c.m), odd(c.m);
    for (std::size_t k = 0; k < c.m; ++k) {
        even[k] = r[2 * k];
        odd[k] = r[2 * k + 1];
    }
    return {ntt_negacyclic(ctx, c, even), ntt_negacyclic(ctx, c, odd)};
}

NegacyclicElement inverse_and_interleave(OpCounter& ctx, const NttContext& c, const U64Vec& p0,
                                         const U64Vec& p1) {
    const U64Vec even = intt_negacyclic(ctx, c, p0);
    const U64Vec odd = intt_negacyclic(ctx, c, p1);
    std::vector<Scalar> coeffs;
    coeffs.reserve(c.n);
    for (std::size_t k = 0; k < c.m; ++k) {
        coeffs.push_back(Scalar::residue(static_cast<std::int64_t>(even[k]), c.q));
        coeffs.push_back(Scalar::residue(static_cast<std::int64_t>(odd[k]), c.q));
    }
    return NegacyclicElement(std::move(coeffs));
}

}  // namespace

NegacyclicElement ntt_pointwise_direct(OpCounter& ctx, const NttContext& c,
                                       const NegacyclicElement& a, const NegacyclicElement& r) {
    check_element(c, a, "a");
    check_element(c, r, "r");
    const PhaseSpectra A = transform_phases(ctx, c, a);
    const PhaseSpectra R = transform_phases(ctx, c, r);

    const U64Vec a0r0 = vec_mul(ctx, A.even, R.even, c.q);
    const U64Vec a1r1 = vec_mul(ctx, A.odd, R.odd, c.q);
    const U64Vec p0 = vec_add(ctx, a0r0, vec_mul(ctx, c.wrap_twiddle, a1r1, c.q), c.q);
    const U64Vec p1 = vec_add(ctx, vec_mul(ctx, A.even, R.odd, c.q),
                              vec_mul(ctx, A.odd, R.even, c.q), c.q);
    return inverse_and_interleave(ctx, c, p0, p1);
}

NegacyclicElement ntt_pointwise_fast2(OpCounter& ctx, const NttContext& c,
                                      const NegacyclicElement& a, const NegacyclicElement& r) {
    check_element(c, a, "a");
    check_element(c, r, "r");
    const PhaseSpectra A = transform_phases(ctx, c, a);
    const PhaseSpectra R = transform_phases(ctx, c, r);

    NttOps ops{&c};
    Fast2Result<NttOps> res = fast2_apply(ctx, ops, A.even, A.odd, R.even, R.odd);
    return inverse_and_interleave(ctx, c, res.p0, res.p1);
}

}  // namespace faststructs
