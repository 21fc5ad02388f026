#include "faststructs/scalar.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "faststructs/modular.hpp"

namespace faststructs {

namespace {

[[noreturn]] void throw_mismatch(const Scalar& a, const Scalar& b) {
    throw std::invalid_argument("ring mismatch: " + a.ring().name() + " vs " + b.ring().name());
}

void check_same_ring(const Scalar& a, const Scalar& b) {
    if (a.kind() != b.kind()) throw_mismatch(a, b);
    if (a.kind() == RingKind::ModQ && a.as_mod().modulus != b.as_mod().modulus) throw_mismatch(a, b);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("exact integer add overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("exact integer mul overflow");
    return r;
}

Rational normalize(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    if (den < 0) {
        num = checked_mul(num, -1);
        den = checked_mul(den, -1);
    }
    std::int64_t g = std::gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

Rational rat_add(const Rational& a, const Rational& b) {
    // num = a.num*b.den + b.num*a.den over a.den*b.den, then reduce
    return normalize(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
                     checked_mul(a.den, b.den));
}

Rational rat_mul(const Rational& a, const Rational& b) {
    // cross-reduce first to dodge avoidable overflow
    const std::int64_t g1 = std::gcd(a.num, b.den);
    const std::int64_t g2 = std::gcd(b.num, a.den);
    return normalize(checked_mul(a.num / g1, b.num / g2), checked_mul(a.den / g2, b.den / g1));
}

}  // namespace

ScalarRing ScalarRing::mod_q(std::uint64_t q) {
    if (q < 3 || q % 2 == 0 || !is_prime_u64(q)) {
        throw std::invalid_argument("ModQ modulus must be an odd prime >= 3, got " + std::to_string(q));
    }
    return {RingKind::ModQ, q};
}

std::string ScalarRing::name() const {
    switch (kind) {
        case RingKind::ExactInt: return "ExactInt";
        case RingKind::Rational: return "Rational";
        case RingKind::Complex: return "ComplexF64";
        case RingKind::ModQ: return "ModQ(" + std::to_string(modulus) + ")";
    }
    return "?";
}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) {
    return Scalar(normalize(num, den));
}

Scalar Scalar::residue(std::int64_t value, std::uint64_t q) {
    if (q == 0) throw std::invalid_argument("zero modulus");
    std::int64_t r = value % static_cast<std::int64_t>(q);
    if (r < 0) r += static_cast<std::int64_t>(q);
    return Scalar(ModElem{static_cast<std::uint64_t>(r), q});
}

Scalar Scalar::from_int(const ScalarRing& ring, std::int64_t v) {
    switch (ring.kind) {
        case RingKind::ExactInt: return integer(v);
        case RingKind::Rational: return Scalar(Rational{v, 1});
        case RingKind::Complex: return complex(static_cast<double>(v));
        case RingKind::ModQ: return residue(v, ring.modulus);
    }
    throw std::invalid_argument("unknown ring kind");
}

ScalarRing Scalar::ring() const {
    ScalarRing r;
    r.kind = kind();
    if (r.kind == RingKind::ModQ) r.modulus = as_mod().modulus;
    return r;
}

bool Scalar::is_zero() const {
    switch (kind()) {
        case RingKind::ExactInt: return as_int() == 0;
        case RingKind::Rational: return as_rational().num == 0;
        case RingKind::Complex: return as_complex() == std::complex<double>(0.0, 0.0);
        case RingKind::ModQ: return as_mod().value == 0;
    }
    return false;
}

std::string Scalar::to_string() const {
    std::ostringstream os;
    switch (kind()) {
        case RingKind::ExactInt: os << as_int(); break;
        case RingKind::Rational: {
            Rational r = as_rational();
            os << r.num;
            if (r.den != 1) os << "/" << r.den;
            break;
        }
        case RingKind::Complex: {
            auto c = as_complex();
            os << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i";
            break;
        }
        case RingKind::ModQ: os << as_mod().value; break;
    }
    return os.str();
}

Scalar ring_mul(OpCounter& ctx, const Scalar& a, const Scalar& b) {
    check_same_ring(a, b);
    ctx.count_mul();
    switch (a.kind()) {
        case RingKind::ExactInt:
            return Scalar::integer(checked_mul(a.as_int(), b.as_int()));
        case RingKind::Rational: {
            Rational r = rat_mul(a.as_rational(), b.as_rational());
            return Scalar::rational(r.num, r.den);
        }
        case RingKind::Complex: {
            auto c = a.as_complex() * b.as_complex();
            return Scalar::complex(c.real(), c.imag());
        }
        case RingKind::ModQ: {
            ModElem x = a.as_mod(), y = b.as_mod();
            return Scalar::residue(static_cast<std::int64_t>(mul_mod(x.value, y.value, x.modulus)),
                                   x.modulus);
        }
    }
    throw std::invalid_argument("unknown ring kind");
}

Scalar ring_add(OpCounter& ctx, const Scalar& a, const Scalar& b) {
    check_same_ring(a, b);
    ctx.count_add();
    switch (a.kind()) {
        case RingKind::ExactInt:
            return Scalar::integer(checked_add(a.as_int(), b.as_int()));
        case RingKind::Rational: {
            Rational r = rat_add(a.as_rational(), b.as_rational());
            return Scalar::rational(r.num, r.den);
        }
        case RingKind::Complex: {
            auto c = a.as_complex() + b.as_complex();
            return Scalar::complex(c.real(), c.imag());
        }
        case RingKind::ModQ: {
            ModElem x = a.as_mod(), y = b.as_mod();
            return Scalar::residue(static_cast<std::int64_t>(add_mod(x.value, y.value, x.modulus)),
                                   x.modulus);
        }
    }
    throw std::invalid_argument("unknown ring kind");
}

Scalar ring_sub(OpCounter& ctx, const Scalar& a, const Scalar& b) {
    return ring_add(ctx, a, ring_neg(b));
}

Scalar ring_neg(const Scalar& a) {
    switch (a.kind()) {
        case RingKind::ExactInt: return Scalar::integer(checked_mul(a.as_int(), -1));
        case RingKind::Rational: {
            Rational r = a.as_rational();
            return Scalar::rational(checked_mul(r.num, -1), r.den);
        }
        case RingKind::Complex: {
            auto c = -a.as_complex();
            return Scalar::complex(c.real(), c.imag());
        }
        case RingKind::ModQ: {
            ModElem x = a.as_mod();
            return Scalar::residue(static_cast<std::int64_t>(neg_mod(x.value, x.modulus)), x.modulus);
        }
    }
    throw std::invalid_argument("unknown ring kind");
}

bool complex_close(std::complex<double> a, std::complex<double> b, double atol, double rtol) {
    return std::abs(a - b) <= atol + rtol * std::abs(b);
}

bool scalar_close(const Scalar& a, const Scalar& b, double atol, double rtol) {
    if (a.kind() != b.kind()) return false;
    if (a.kind() == RingKind::Complex) return complex_close(a.as_complex(), b.as_complex(), atol, rtol);
    return a == b;
}

Scalar random_scalar(SeededRng& rng, const ScalarRing& ring) {
    switch (ring.kind) {
        case RingKind::ExactInt:
            return Scalar::integer(rng.uniform_int(-kExactIntSampleBound, kExactIntSampleBound));
        case RingKind::Rational: {
            std::int64_t num = rng.uniform_int(-kExactIntSampleBound, kExactIntSampleBound);
            std::int64_t den = rng.uniform_int(1, 16);
            return Scalar::rational(num, den);
        }
        case RingKind::Complex: {
            double re = rng.uniform_pm1();
            double im = rng.uniform_pm1();
            return Scalar::complex(re, im);
        }
        case RingKind::ModQ:
            return Scalar::residue(static_cast<std::int64_t>(rng.uniform_below(ring.modulus)),
                                   ring.modulus);
    }
    throw std::invalid_argument("unknown ring kind");
}

std::vector<Scalar> random_vector(SeededRng& rng, const ScalarRing& ring, std::size_t len) {
    std::vector<Scalar> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) out.push_back(random_scalar(rng, ring));
    return out;
}

}  // namespace faststructs
