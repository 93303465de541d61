// rng.hpp - deterministic splittable generator for sweeps and trajectories

#pragma once

#include <cstdint>

namespace masertur {

namespace detail {

// splitmix64 finalizer: bijective with full avalanche
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        return detail::mix64(state += 0x9E3779B97F4A7C15ULL);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
};

// Substream for item `index` under a run seed: a pure function of (seed,
// index). The double mix scatters the stream origins across the counter
// orbit; adjacent indices would otherwise walk almost the same sequence.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    const std::uint64_t origin =
        detail::mix64(detail::mix64(seed) + 0x9E3779B97F4A7C15ULL * (index + 1));
    return SplitMix64(origin);
}

} // namespace masertur
