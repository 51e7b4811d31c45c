#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ncrl {

/// splitmix64: 64-bit counter-based generator. Cheap, full-period, and
/// trivially reproducible from a single decimal seed, which every report
/// echoes back.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; pairs are cached so the stream is a
    /// pure function of the seed.
    double next_gaussian() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        has_cached_ = true;
        return radius * std::cos(angle);
    }

    /// Independent child stream; derivation depends only on the parent seed
    /// and the index, so per-sample sub-seeds are order-free.
    SplitMix64 child(std::uint64_t index) const {
        SplitMix64 mixer(seed_ ^ (0xD1B54A32D192ED03ull * (index + 1)));
        return SplitMix64(mixer.next());
    }

    /// Fresh stream seeded from this one's output sequence.
    SplitMix64 fork() { return SplitMix64(next()); }

private:
    std::uint64_t state_;
    std::uint64_t seed_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace ncrl
