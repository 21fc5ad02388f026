#pragma once

#include <cstdint>
#include <string_view>

namespace faststructs {

// splitmix64 (Steele, Lea, Flood 2014). Chosen for a stable, trivially
// portable bit-exact sequence: identical (seed, draw index) pairs must
// produce identical values on every platform and in every release.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    static constexpr std::string_view algorithm() { return "splitmix64"; }

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, bound) via rejection.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        uniform_below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    // Uniform in [-1, 1) with 53-bit resolution.
    double uniform_pm1() {
        return static_cast<double>(next_u64() >> 11) * 0x1p-52 - 1.0;
    }

private:
    std::uint64_t state_;
};

}  // namespace faststructs
