#pragma once

#include <cstdint>
#include <limits>

namespace mec {

/// SplitMix64 finalizer: a bijective 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Per-trial seed derivation. Trials can be generated independently and in
/// any order.
constexpr std::uint64_t hash64(std::uint64_t seed, std::uint64_t t) noexcept {
    return mix64(mix64(seed) ^ (t + 0x9e3779b97f4a7c15ULL));
}

/// Counter-based 64-bit generator (SplitMix64): draw k is
/// mix64(seed + (k + 1) * golden_gamma). No hidden global state.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit constexpr CounterRng(std::uint64_t seed) noexcept : state_(seed) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix64(state_);
    }

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform_open() noexcept {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1p-53;
    }

private:
    std::uint64_t state_;
};

}  // namespace mec
