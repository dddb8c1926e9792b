#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace unimix {

/// PCG-XSH-RR 64/32 (O'Neill 2014): 64-bit LCG state, 32-bit output through an
/// xorshift and a data-dependent rotation. Seeding follows the reference
/// pcg32_srandom_r(initstate = seed, initseq = stream). All derived draws use
/// integer arithmetic and exact double conversions only, so any language can
/// replay a seed bit-for-bit.
class Pcg32 {
public:
    using result_type = std::uint32_t;

    static constexpr std::string_view kName = "pcg32-xsh-rr";
    static constexpr int kVersion = 1;
    static constexpr std::uint64_t kDefaultStream = 0xda3e39cb94b95bdbULL;

    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = kDefaultStream) noexcept
        : inc_((stream << 1U) | 1U) {
        next();
        state_ += seed;
        next();
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
    result_type operator()() noexcept { return next(); }

    std::uint32_t next() noexcept {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18U) ^ old) >> 27U);
        const auto rot = static_cast<std::uint32_t>(old >> 59U);
        return (xorshifted >> rot) | (xorshifted << ((32U - rot) & 31U));
    }

    std::uint64_t next64() noexcept {
        const std::uint64_t hi = next();
        return (hi << 32U) | next();
    }

    /// 53-bit draw in [0, 1): (a * 2^26 + b) / 2^53 with a = next() >> 5, b = next() >> 6.
    double uniform01() noexcept {
        const double a = static_cast<double>(next() >> 5U);
        const double b = static_cast<double>(next() >> 6U);
        return (a * 67108864.0 + b) / 9007199254740992.0;
    }

    /// Same 53-bit grid shifted by half a step, so the result lies in (0, 1).
    double uniform_open() noexcept {
        const double a = static_cast<double>(next() >> 5U);
        const double b = static_cast<double>(next() >> 6U);
        return (a * 67108864.0 + b + 0.5) / 9007199254740992.0;
    }

    /// Uniform integer in [0, bound) by rejection on next64(); bound > 0.
    std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next64();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_;
};

}  // namespace unimix
