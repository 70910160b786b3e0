#pragma once

// Deterministic random number generation.
//
// Every random draw in the library comes from xoshiro256++ seeded through
// splitmix64, with normal variates produced by the trigonometric Box-Muller
// transform. The generators are spelled out here (rather than using
// std::mt19937 + std::normal_distribution, whose distribution algorithms are
// implementation-defined) so that a seed fully determines every output and
// streams can be partitioned per sweep cell. Floating-point transcendentals
// (log, sin, cos) follow the platform libm, so bit-level reproducibility is
// guaranteed per platform, not across libms.

#include <bit>
#include <cstdint>

#include "fcsim/error.hpp"

namespace fcsim {

// Finalizer of splitmix64 (Steele, Lea & Flood; Vigna's reference code).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

// splitmix64 stream; used to expand a 64-bit seed into generator state.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }

private:
    std::uint64_t state_;
};

// xoshiro256++ (Blackman & Vigna). State is seeded with four successive
// splitmix64 outputs, as recommended by the authors.
class Xoshiro256PlusPlus {
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256PlusPlus(std::uint64_t seed) noexcept {
        SplitMix64 sm(seed);
        for (auto& word : s_) word = sm.next();
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0,1): top 53 bits scaled by 2^-53.
    double uniform01() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform on the open interval (0,1): lattice midpoints, never 0 or 1.
    double uniform_open01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Unbiased integer in [0, bound) by rejection on the low residue range.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw InvalidArgument("uniform bound must be positive");
        const std::uint64_t threshold = (-bound) % bound;
        for (;;) {
            const std::uint64_t x = next();
            if (x >= threshold) return x % bound;
        }
    }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4];
};

// Standard normal variates via Box-Muller: u1 in (0,1], u2 in [0,1),
// r = sqrt(-2 ln u1), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2). Exactly two
// uniforms are consumed per pair; the second variate is cached.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) noexcept : rng_(seed) {}

    double next() noexcept;

    Xoshiro256PlusPlus& engine() noexcept { return rng_; }

private:
    Xoshiro256PlusPlus rng_;
    double cached_ = 0.0;
    bool have_cached_ = false;
};

// Order-sensitive 64-bit hash chain for deriving independent sub-seeds from
// a master seed: h <- mix64(h ^ (v + 0x9E3779B97F4A7C15 + (h<<6) + (h>>2))).
// The absorbed values (including double bit patterns for real-valued
// parameters) are part of the reproducibility contract documented in the
// README.
class SeedMixer {
public:
    explicit constexpr SeedMixer(std::uint64_t master) noexcept : h_(master) {}

    constexpr SeedMixer& absorb(std::uint64_t v) noexcept {
        h_ = mix64(h_ ^ (v + 0x9E3779B97F4A7C15ULL + (h_ << 6) + (h_ >> 2)));
        return *this;
    }

    SeedMixer& absorb_double(double v) noexcept {
        return absorb(std::bit_cast<std::uint64_t>(v));
    }

    constexpr std::uint64_t value() const noexcept { return h_; }

private:
    std::uint64_t h_;
};

}  // namespace fcsim
