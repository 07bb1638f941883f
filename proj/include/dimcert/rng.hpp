#pragma once

#include <cmath>
#include <cstdint>

namespace dimcert {

/// SplitMix64 with a Box-Muller Gaussian on top.  Hand-rolled so that seeded
/// runs produce identical streams on every platform and standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller; draws two uniforms per call.
    double gaussian() {
        const double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

/// Decorrelated per-task seed for parallel restarts.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) {
    SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (task + 1)));
    mix.next();
    return mix.next();
}

} // namespace dimcert
