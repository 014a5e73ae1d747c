#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hofa::detail {

/** SplitMix64 (Steele, Lea, Flood 2014). Chosen as the project RNG because
 *  its output is a pure function of the 64-bit state with no
 *  implementation-defined behavior, so seeded runs reproduce across
 *  platforms and compilers. */
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /** Uniform double in [0, 1) from the top 53 bits. */
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /** Uniform integer in [0, n) via 128-bit multiply-shift (no modulo,
     *  bias < 2^-64 per draw, identical on all platforms). */
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>((static_cast<__uint128_t>(next()) * n) >> 64);
    }

    /** Standard complex gaussian via Box-Muller. */
    std::pair<double, double> gaussian_pair() {
        double u1 = uniform();
        double u2 = uniform();
        // keep u1 away from 0 so the log is finite
        u1 = (u1 + 0x1.0p-54) / (1.0 + 0x1.0p-53);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }
};

/** Stable mix of a seed with stream labels, for carving independent
 *  substreams out of one user seed (per-sample, per-candidate, ...). */
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    SplitMix64 g(seed ^ (0x632be59bd9b4e019ULL + a * 0x9e3779b97f4a7c15ULL));
    g.next();
    std::uint64_t s = g.next() ^ (b * 0xda942042e4dd58b5ULL);
    SplitMix64 h(s);
    return h.next();
}

} // namespace hofa::detail
