#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "faststructs/op_counter.hpp"
#include "faststructs/scalar.hpp"

namespace faststructs {

// Element of Z_q[x]/(x^n+1) (or its exact-integer analogue); n is a power
// of two >= 2 and ModQ coefficients stay reduced to [0, q).
struct NegacyclicElement {
    std::vector<Scalar> coeffs;

    NegacyclicElement() = default;
    explicit NegacyclicElement(std::vector<Scalar> c);

    std::size_t size() const { return coeffs.size(); }
    ScalarRing ring() const { return coeffs.at(0).ring(); }

    static NegacyclicElement zero(const ScalarRing& ring, std::size_t n);
    static NegacyclicElement one(const ScalarRing& ring, std::size_t n);

    bool operator==(const NegacyclicElement&) const = default;
};

// Multiplication by x: rotate one step, wrapped coefficient negated.
// A signed permutation, so it costs no counted operations.
NegacyclicElement negacyclic_shift(const NegacyclicElement& a);

// Schoolbook oracle: p[k] = sum_{i+j=k} a_i b_j - sum_{i+j=k+n} a_i b_j.
// Counts n^2 multiplications.
NegacyclicElement negacyclic_mul_direct(OpCounter& ctx, const NegacyclicElement& a,
                                        const NegacyclicElement& b);

// One even/odd split into Z_q[y]/(y^m+1) with y = x^2, m = n/2, three
// half-size direct products. Requires n >= 4; counts 3*(n/2)^2
// multiplications.
NegacyclicElement negacyclic_mul_fast2(OpCounter& ctx, const NegacyclicElement& a,
                                       const NegacyclicElement& b);

// Splits recursively until the size reaches the threshold, then schoolbook.
// A threshold below 2 is clamped to 2 (size 2 is always schoolbook). Counts
// 3^k * (n/2^k)^2 multiplications, k = log2(n/threshold).
NegacyclicElement negacyclic_mul_recursive(OpCounter& ctx, const NegacyclicElement& a,
                                           const NegacyclicElement& b, std::size_t threshold);

}  // namespace faststructs
