#pragma once

#include <cstdint>

#include "rinv/series.hpp"

namespace rinv {

/// SplitMix64 generator. Used instead of <random> engines so that seeded
/// draws are identical across standard libraries and across runs.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [-1, 1).
    double uniform_pm1() {
        return 2.0 * (static_cast<double>(next() >> 11) * 0x1.0p-53) - 1.0;
    }

    Complex complex_pm1() {
        const double re = uniform_pm1();
        return Complex(re, uniform_pm1());
    }

private:
    std::uint64_t state_;
};

/// Decorrelated substream for (seed, index); trial results stay independent
/// of worker scheduling.
inline std::uint64_t substream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mix(seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL));
    mix.next();
    return mix.next();
}

/// Series with every coefficient uniform in the complex unit box, optionally
/// normalized to unit weighted norm.
inline HermiteSeries random_series(const TruncationConfig& config, std::uint64_t seed,
                                   bool normalize = true) {
    SplitMix64 rng(seed);
    HermiteSeries s(config);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = rng.complex_pm1();
    if (normalize) {
        const double norm = s.norm();
        if (norm > 0.0) s *= Complex(1.0 / norm, 0.0);
    }
    return s;
}

}  // namespace rinv
