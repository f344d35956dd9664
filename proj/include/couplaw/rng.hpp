#pragma once

#include <cstdint>
#include <limits>

namespace couplaw {

// splitmix64 finalizer, used for seeding and for deriving sub-streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// xorshift64* (Vigna 2016):
//   x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 0x2545F4914F6CDD1D
// The state is splitmix64(seed), replaced by a fixed constant if that is 0.
// Every derived quantity below uses only integer arithmetic and one exact
// scaling, so streams match bit for bit on any IEEE-754 platform.
class Xorshift64Star {
public:
    using result_type = std::uint64_t;

    explicit constexpr Xorshift64Star(std::uint64_t seed) noexcept : state_(splitmix64(seed)) {
        if (state_ == 0) state_ = 0x853C49E6748FEA9Bull;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1Dull;
    }

    // Uniform on [0, 1) with 53 random bits.
    constexpr double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    // Uniform on [0, n) by rejection, n > 0.
    constexpr std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t threshold = (0 - n) % n;
        while (true) {
            std::uint64_t r = (*this)();
            if (r >= threshold) return r % n;
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace couplaw
