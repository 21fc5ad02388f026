#include "faststructs/negacyclic.hpp"

#include <stdexcept>

#include "faststructs/fast2_skeleton.hpp"
#include "faststructs/parallel_fir.hpp"

namespace faststructs {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void check_pair(const NegacyclicElement& a, const NegacyclicElement& b) {
    if (a.size() != b.size()) throw std::invalid_argument("negacyclic size mismatch");
    if (a.ring() != b.ring()) throw std::invalid_argument("negacyclic ring mismatch");
}

}  // namespace

NegacyclicElement::NegacyclicElement(std::vector<Scalar> c) : coeffs(std::move(c)) {
    if (!power_of_two(coeffs.size()) || coeffs.size() < 2)
        throw std::invalid_argument("negacyclic length must be a power of two >= 2");
    const RingKind kind = coeffs[0].kind();
    if (kind != RingKind::ModQ && kind != RingKind::ExactInt)
        throw std::invalid_argument("negacyclic coefficients must be ModQ or ExactInt");
    const ScalarRing r = coeffs[0].ring();
    for (const Scalar& s : coeffs)
        if (s.ring() != r) throw std::invalid_argument("mixed coefficient rings");
}

NegacyclicElement NegacyclicElement::zero(const ScalarRing& ring, std::size_t n) {
    return NegacyclicElement(std::vector<Scalar>(n, Scalar::zero(ring)));
}

NegacyclicElement NegacyclicElement::one(const ScalarRing& ring, std::size_t n) {
    NegacyclicElement e = zero(ring, n);
    e.coeffs[0] = Scalar::one(ring);
    return e;
}

NegacyclicElement negacyclic_shift(const NegacyclicElement& a) {
    const std::size_t n = a.size();
    std::vector<Scalar> out(n, a.coeffs[0]);
    out[0] = ring_neg(a.coeffs[n - 1]);
    for (std::size_t i = 1; i < n; ++i) out[i] = a.coeffs[i - 1];
    return NegacyclicElement(std::move(out));
}

NegacyclicElement negacyclic_mul_direct(OpCounter& ctx, const NegacyclicElement& a,
                                        const NegacyclicElement& b) {
    check_pair(a, b);
    const std::size_t n = a.size();
    std::vector<Scalar> p(n, Scalar::zero(a.ring()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Scalar t = ring_mul(ctx, a.coeffs[i], b.coeffs[j]);
            const std::size_t k = i + j;
            if (k < n)
                p[k] = ring_add(ctx, p[k], t);
            else
                p[k - n] = ring_sub(ctx, p[k - n], t);
        }
    return NegacyclicElement(std::move(p));
}

namespace {

// Skeleton ops over half-size sub-ring elements; the wrap element is
// multiplication by y = x^2, i.e. the negacyclic shift.
struct SubringOps {
    using Value = NegacyclicElement;
    std::size_t threshold;  // schoolbook at or below this size

    Value mul(OpCounter& ctx, const Value& a, const Value& b) const {
        if (a.size() <= threshold) return negacyclic_mul_direct(ctx, a, b);
        return negacyclic_mul_recursive(ctx, a, b, threshold);
    }
    Value add(OpCounter& ctx, const Value& a, const Value& b) const {
        std::vector<Scalar> out;
        out.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out.push_back(ring_add(ctx, a.coeffs[i], b.coeffs[i]));
        return Value(std::move(out));
    }
    Value sub(OpCounter& ctx, const Value& a, const Value& b) const {
        std::vector<Scalar> out;
        out.reserve(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            out.push_back(ring_sub(ctx, a.coeffs[i], b.coeffs[i]));
        return Value(std::move(out));
    }
    Value wrap(OpCounter&, const Value& v) const { return negacyclic_shift(v); }
};

NegacyclicElement split_once(OpCounter& ctx, const NegacyclicElement& a, const NegacyclicElement& b,
                             std::size_t sub_threshold) {
    const std::size_t n = a.size();
    PolyphaseDecomposition ap = polyphase_decompose(a.coeffs, 2);
    PolyphaseDecomposition bp = polyphase_decompose(b.coeffs, 2);
    NegacyclicElement a0(std::move(ap.phases[0])), a1(std::move(ap.phases[1]));
    NegacyclicElement b0(std::move(bp.phases[0])), b1(std::move(bp.phases[1]));

    SubringOps ops{sub_threshold};
    Fast2Result<SubringOps> r = fast2_apply(ctx, ops, a0, a1, b0, b1);

    std::vector<Scalar> p;
    p.reserve(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
        p.push_back(r.p0.coeffs[k]);
        p.push_back(r.p1.coeffs[k]);
    }
    return NegacyclicElement(std::move(p));
}

}  // namespace

NegacyclicElement negacyclic_mul_fast2(OpCounter& ctx, const NegacyclicElement& a,
                                       const NegacyclicElement& b) {
    check_pair(a, b);
    if (a.size() < 4) throw std::invalid_argument("fast2 requires n >= 4");
    return split_once(ctx, a, b, a.size() / 2);
}

NegacyclicElement negacyclic_mul_recursive(OpCounter& ctx, const NegacyclicElement& a,
                                           const NegacyclicElement& b, std::size_t threshold) {
    check_pair(a, b);
    if (!power_of_two(threshold)) throw std::invalid_argument("threshold must be a power of two");
    if (threshold < 2) threshold = 2;  // size 2 is always schoolbook
    if (a.size() <= threshold) return negacyclic_mul_direct(ctx, a, b);
    return split_once(ctx, a, b, threshold);
}

}  // namespace faststructs
