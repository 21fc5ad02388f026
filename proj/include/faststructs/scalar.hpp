#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "faststructs/op_counter.hpp"
#include "faststructs/rng.hpp"

namespace faststructs {

enum class RingKind : std::uint8_t { ExactInt = 0, Rational = 1, Complex = 2, ModQ = 3 };

// Coefficient domain descriptor. ModQ moduli are odd primes >= 3 and values
// are kept reduced to [0, q). ExactInt and Rational arithmetic is exact and
// throws std::overflow_error when a result leaves the 64-bit range.
struct ScalarRing {
    RingKind kind = RingKind::ExactInt;
    std::uint64_t modulus = 0;  // ModQ only

    static ScalarRing exact_int() { return {RingKind::ExactInt, 0}; }
    static ScalarRing rational() { return {RingKind::Rational, 0}; }
    static ScalarRing complex_f64() { return {RingKind::Complex, 0}; }
    static ScalarRing mod_q(std::uint64_t q);  // validates odd prime >= 3

    bool operator==(const ScalarRing&) const = default;
    std::string name() const;
};

// Default comparison tolerances for the Complex ring.
inline constexpr double kComplexAtol = 1e-9;
inline constexpr double kComplexRtol = 1e-9;

// Default ExactInt sampling range: keeps iterated-convolution and
// negacyclic intermediates exactly representable in 64 bits for n <= 2^16.
inline constexpr std::int64_t kExactIntSampleBound = 256;

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;  // > 0, gcd(|num|, den) == 1
    bool operator==(const Rational&) const = default;
};

struct ModElem {
    std::uint64_t value = 0;
    std::uint64_t modulus = 0;
    bool operator==(const ModElem&) const = default;
};

class Scalar {
public:
    Scalar() : v_(std::int64_t{0}) {}

    static Scalar integer(std::int64_t v) { return Scalar(v); }
    static Scalar rational(std::int64_t num, std::int64_t den);
    static Scalar complex(double re, double im = 0.0) {
        return Scalar(std::complex<double>(re, im));
    }
    // Reduces into [0, q). The modulus is taken as given; primality is
    // enforced once, at ScalarRing::mod_q construction.
    static Scalar residue(std::int64_t value, std::uint64_t q);

    static Scalar zero(const ScalarRing& ring) { return from_int(ring, 0); }
    static Scalar one(const ScalarRing& ring) { return from_int(ring, 1); }
    static Scalar from_int(const ScalarRing& ring, std::int64_t v);

    RingKind kind() const { return static_cast<RingKind>(v_.index()); }
    ScalarRing ring() const;

    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    Rational as_rational() const { return std::get<Rational>(v_); }
    std::complex<double> as_complex() const { return std::get<std::complex<double>>(v_); }
    ModElem as_mod() const { return std::get<ModElem>(v_); }

    bool is_zero() const;
    bool operator==(const Scalar&) const = default;

    std::string to_string() const;

private:
    template <class T>
    explicit Scalar(T v) : v_(std::move(v)) {}

    std::variant<std::int64_t, Rational, std::complex<double>, ModElem> v_;
};

// Counted ring operations. Every executed multiplication counts exactly one,
// including multiplication by 0, 1 or a trivial twiddle; subtraction counts
// as one add; sign inversion is free. Mixing rings throws
// std::invalid_argument.
Scalar ring_mul(OpCounter& ctx, const Scalar& a, const Scalar& b);
Scalar ring_add(OpCounter& ctx, const Scalar& a, const Scalar& b);
Scalar ring_sub(OpCounter& ctx, const Scalar& a, const Scalar& b);
Scalar ring_neg(const Scalar& a);

// |a - b| <= atol + rtol*|b|
bool complex_close(std::complex<double> a, std::complex<double> b,
                   double atol = kComplexAtol, double rtol = kComplexRtol);

// Exact comparison for exact rings, tolerance comparison for Complex.
bool scalar_close(const Scalar& a, const Scalar& b,
                  double atol = kComplexAtol, double rtol = kComplexRtol);

// Deterministic sampling. ModQ: uniform in [0, q). ExactInt: uniform in
// [-kExactIntSampleBound, kExactIntSampleBound]. Rational: numerator in the
// same range over denominator in [1, 16]. Complex: re, im uniform in [-1, 1).
Scalar random_scalar(SeededRng& rng, const ScalarRing& ring);
std::vector<Scalar> random_vector(SeededRng& rng, const ScalarRing& ring, std::size_t len);

}  // namespace faststructs
