#pragma once

#include <cmath>
#include <cstdint>

namespace swarmlab {

// Deterministic 64-bit random streams. Everything here is fixed-width
// integer and floating-point arithmetic with no library distributions,
// so sequences are bit-identical across compilers, platforms, and runs.
//
// The generator is splitmix64 (Steele, Lea, Flood; public domain).
// Independent streams are derived by hashing a master seed with stream
// labels, so e.g. per-robot sensor noise at a given control cycle never
// shifts when an unrelated consumer draws more or fewer values.

inline constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Hash-combines a seed with one label value.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t label) {
    std::uint64_t s = seed ^ (label + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    return splitmix64_next(s);
}

class Rng {
public:
    Rng() = default;
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Stream keyed by (seed, a[, b[, c]]). Same keys, same stream.
    static Rng stream(std::uint64_t seed, std::uint64_t a) {
        return Rng(mix_seed(seed, a));
    }
    static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
        return Rng(mix_seed(mix_seed(seed, a), b));
    }
    static Rng stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return Rng(mix_seed(mix_seed(mix_seed(seed, a), b), c));
    }

    std::uint64_t next_u64() { return splitmix64_next(state_); }

    // Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    // Uniform integer in [0, n). n must be > 0. The multiply-shift map
    // has bias below n / 2^64, irrelevant at the sizes used here.
    std::uint64_t uniform_index(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(uniform_index(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double gaussian() {
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kRngPi * u2);
    }

    double gaussian(double mean, double sd) { return mean + sd * gaussian(); }

private:
    static constexpr double kRngPi = 3.141592653589793238462643383279502884;
    std::uint64_t state_ = 0x853c49e6748fea9bULL;
};

}  // namespace swarmlab
