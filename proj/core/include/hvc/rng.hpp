#pragma once

#include <cstdint>
#include <limits>

namespace hvc {

__extension__ typedef unsigned __int128 uint128_t;

// SplitMix64. Used instead of <random> distributions because their output is
// implementation-defined and share files must be bit-exact across builds.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    // Uniform integer in [0, bound) by Lemire's multiply-and-reject method.
    constexpr std::uint64_t bounded(std::uint64_t bound) noexcept {
        auto x = (*this)();
        auto product = static_cast<uint128_t>(x) * bound;
        auto low = static_cast<std::uint64_t>(product);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = (*this)();
                product = static_cast<uint128_t>(x) * bound;
                low = static_cast<std::uint64_t>(product);
            }
        }
        return static_cast<std::uint64_t>(product >> 64);
    }

    // Uniform double in [0, 1) with 53 random bits.
    constexpr double unit() noexcept {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Independent stream for item `index` under a run-level `seed`.
    static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
        return SplitMix64(mix(seed ^ mix(index + 0x9E3779B97F4A7C15ULL)));
    }

private:
    std::uint64_t state_;
};

}  // namespace hvc
