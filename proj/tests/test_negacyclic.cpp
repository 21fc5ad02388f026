#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "faststructs/negacyclic.hpp"
#include "faststructs/rng.hpp"

using namespace faststructs;

namespace {

NegacyclicElement from_ints(const ScalarRing& ring, std::initializer_list<std::int64_t> vs) {
    std::vector<Scalar> c;
    for (auto v : vs) c.push_back(Scalar::from_int(ring, v));
    return NegacyclicElement(std::move(c));
}

NegacyclicElement random_element(SeededRng& rng, const ScalarRing& ring, std::size_t n) {
    return NegacyclicElement(random_vector(rng, ring, n));
}

}  // namespace

TEST_CASE("schoolbook oracle basics") {
    OpCounter ctx;
    const ScalarRing q17 = ScalarRing::mod_q(17);

    SUBCASE("x * x = -1 mod (x^2+1)") {
        auto x = from_ints(q17, {0, 1});
        auto p = negacyclic_mul_direct(ctx, x, x);
        CHECK(p == from_ints(q17, {16, 0}));
    }
    SUBCASE("multiplicative identity") {
        auto one = NegacyclicElement::one(q17, 8);
        SeededRng rng(4);
        auto b = random_element(rng, q17, 8);
        CHECK(negacyclic_mul_direct(ctx, one, b) == b);
    }
    SUBCASE("pinned golden vector, n=4 q=17") {
        auto a = from_ints(q17, {1, 2, 3, 4});
        auto b = from_ints(q17, {1, 0, 0, 1});
        ctx.reset();
        auto p = negacyclic_mul_direct(ctx, a, b);
        CHECK(p == from_ints(q17, {16, 16, 16, 5}));
        CHECK(ctx.mults() == 16);  // n^2
    }
    SUBCASE("mismatches are errors") {
        auto a4 = from_ints(q17, {1, 0, 0, 0});
        auto a8 = NegacyclicElement::one(q17, 8);
        CHECK_THROWS_AS(negacyclic_mul_direct(ctx, a4, a8), std::invalid_argument);
        auto b4 = from_ints(ScalarRing::mod_q(5), {1, 0, 0, 0});
        CHECK_THROWS_AS(negacyclic_mul_direct(ctx, a4, b4), std::invalid_argument);
    }
}

TEST_CASE("negacyclic shift: m applications negate") {
    const ScalarRing q17 = ScalarRing::mod_q(17);
    SeededRng rng(8);
    for (std::size_t m : {2u, 4u, 8u}) {
        auto v = random_element(rng, q17, m);
        NegacyclicElement shifted = v;
        for (std::size_t i = 0; i < m; ++i) shifted = negacyclic_shift(shifted);
        for (std::size_t i = 0; i < m; ++i) REQUIRE(shifted.coeffs[i] == ring_neg(v.coeffs[i]));
    }
}

TEST_CASE("fast2 equals the oracle exhaustively over {0,1,q-1}, n=4, q=5") {
    const std::int64_t vals[3] = {0, 1, 4};
    OpCounter ctx;
    for (int code = 0; code < 6561; ++code) {  // 3^8 pairs
        int c = code;
        std::vector<Scalar> coeffs;
        for (int i = 0; i < 8; ++i) {
            coeffs.push_back(Scalar::residue(vals[c % 3], 5));
            c /= 3;
        }
        NegacyclicElement a{{coeffs.begin(), coeffs.begin() + 4}};
        NegacyclicElement b{{coeffs.begin() + 4, coeffs.end()}};
        REQUIRE(negacyclic_mul_fast2(ctx, a, b) == negacyclic_mul_direct(ctx, a, b));
    }
}

TEST_CASE("fast2 counts 3(n/2)^2 and rejects n < 4") {
    const ScalarRing q17 = ScalarRing::mod_q(17);
    SeededRng rng(15);
    auto a = random_element(rng, q17, 8);
    auto b = random_element(rng, q17, 8);
    OpCounter ctx;
    negacyclic_mul_fast2(ctx, a, b);
    CHECK(ctx.mults() == 48);  // 3 * 4^2 vs 64 direct

    auto a2 = from_ints(q17, {1, 2});
    CHECK_THROWS_AS(negacyclic_mul_fast2(ctx, a2, a2), std::invalid_argument);

    SUBCASE("identity passes through fast2") {
        auto one = NegacyclicElement::one(q17, 8);
        OpCounter c2;
        CHECK(negacyclic_mul_fast2(c2, one, b) == b);
    }
}

TEST_CASE("recursive splitting: counts and oracle equality") {
    const ScalarRing ring = ScalarRing::mod_q(257);
    SeededRng rng(123);

    SUBCASE("n=16 threshold=2 counts 108") {
        auto a = random_element(rng, ring, 16);
        auto b = random_element(rng, ring, 16);
        OpCounter ctx;
        auto fast = negacyclic_mul_recursive(ctx, a, b, 2);
        CHECK(ctx.mults() == 108);  // 3^3 * 2^2
        OpCounter oracle_ctx;
        CHECK(fast == negacyclic_mul_direct(oracle_ctx, a, b));
        CHECK(oracle_ctx.mults() == 256);
    }
    SUBCASE("threshold = n behaves exactly like direct") {
        auto a = random_element(rng, ring, 16);
        auto b = random_element(rng, ring, 16);
        OpCounter c1, c2;
        CHECK(negacyclic_mul_recursive(c1, a, b, 16) == negacyclic_mul_direct(c2, a, b));
        CHECK(c1.mults() == c2.mults());
        CHECK(c1.adds() == c2.adds());
    }
    SUBCASE("non-power-of-two threshold is an error") {
        auto a = random_element(rng, ring, 16);
        OpCounter ctx;
        CHECK_THROWS_AS(negacyclic_mul_recursive(ctx, a, a, 3), std::invalid_argument);
    }
    SUBCASE("seeded equality over the full size/modulus grid") {
        for (std::size_t n : {4u, 8u, 16u, 64u, 256u}) {
            for (std::uint64_t q : {5ull, 17ull, 257ull, 3329ull}) {
                const ScalarRing r = ScalarRing::mod_q(q);
                for (int trial = 0; trial < 200; ++trial) {
                    auto a = random_element(rng, r, n);
                    auto b = random_element(rng, r, n);
                    OpCounter ctx;
                    auto want = negacyclic_mul_direct(ctx, a, b);
                    REQUIRE(negacyclic_mul_recursive(ctx, a, b, 2) == want);
                    REQUIRE(negacyclic_mul_fast2(ctx, a, b) == want);
                }
            }
        }
    }
    SUBCASE("ExactInt coefficients stay exact") {
        const ScalarRing z = ScalarRing::exact_int();
        for (int trial = 0; trial < 50; ++trial) {
            auto a = random_element(rng, z, 16);
            auto b = random_element(rng, z, 16);
            OpCounter ctx;
            REQUIRE(negacyclic_mul_recursive(ctx, a, b, 4) == negacyclic_mul_direct(ctx, a, b));
        }
    }
}

TEST_CASE("top-level ring laws on random triples") {
    const ScalarRing ring = ScalarRing::mod_q(17);
    SeededRng rng(77);
    OpCounter ctx;
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_element(rng, ring, 8);
        auto b = random_element(rng, ring, 8);
        auto c = random_element(rng, ring, 8);

        // commutativity
        REQUIRE(negacyclic_mul_fast2(ctx, a, b) == negacyclic_mul_fast2(ctx, b, a));

        // distributivity over coefficient-wise addition
        std::vector<Scalar> sum;
        for (std::size_t i = 0; i < b.size(); ++i)
            sum.push_back(ring_add(ctx, b.coeffs[i], c.coeffs[i]));
        auto lhs = negacyclic_mul_fast2(ctx, a, NegacyclicElement(sum));
        auto ab = negacyclic_mul_fast2(ctx, a, b);
        auto ac = negacyclic_mul_fast2(ctx, a, c);
        for (std::size_t i = 0; i < lhs.size(); ++i)
            REQUIRE(lhs.coeffs[i] == ring_add(ctx, ab.coeffs[i], ac.coeffs[i]));
    }
}

TEST_CASE("element construction guards") {
    const ScalarRing q17 = ScalarRing::mod_q(17);
    std::vector<Scalar> three(3, Scalar::zero(q17));
    CHECK_THROWS_AS(NegacyclicElement{three}, std::invalid_argument);
    std::vector<Scalar> one_elt(1, Scalar::zero(q17));
    CHECK_THROWS_AS(NegacyclicElement{one_elt}, std::invalid_argument);
    std::vector<Scalar> complex_coeffs(4, Scalar::complex(1));
    CHECK_THROWS_AS(NegacyclicElement{complex_coeffs}, std::invalid_argument);
}
