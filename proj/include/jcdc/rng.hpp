#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <vector>

namespace jcdc {

// All randomness in the library flows through SplitMix64 (Steele, Lea &
// Flood's 64-bit mixer). It is used two ways:
//   * as a sequential generator (Rng below), and
//   * as a key-derivation hash (substream_key) so that independent
//     substreams can be addressed by integer paths like
//     (seed, edge i, edge j) or (seed, replicate, node).
// Both are pure integer arithmetic, so streams are bit-identical across
// platforms and independent of evaluation order or thread schedule.

inline constexpr std::uint64_t kSplitMix64Gamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derives a stream key from a seed and an integer path. Folding each path
// component through the mixer keeps (seed, a, b) and (seed, a', b')
// streams decorrelated for distinct paths.
inline std::uint64_t substream_key(std::uint64_t seed,
                                   std::initializer_list<std::uint64_t> path) {
    std::uint64_t k = splitmix64_mix(seed + kSplitMix64Gamma);
    for (std::uint64_t part : path) {
        k = splitmix64_mix((k ^ splitmix64_mix(part + kSplitMix64Gamma)) + kSplitMix64Gamma);
    }
    return k;
}

class Rng {
public:
    explicit Rng(std::uint64_t key) : state_(key) {}

    std::uint64_t next_u64() {
        state_ += kSplitMix64Gamma;
        return splitmix64_mix(state_);
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t threshold = (0ULL - n) % n;
        for (;;) {
            std::uint64_t x = next_u64();
            if (x >= threshold) return x % n;
        }
    }

    // Standard normal via Box-Muller on two fresh uniforms. The sine
    // companion is discarded; determinism is worth more here than the
    // extra uniform draw.
    double normal() {
        const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(uniform_below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

// Single uniform draw addressed purely by key; used for per-edge
// Bernoulli decisions so generation order never matters.
inline double keyed_uniform01(std::uint64_t key) {
    return static_cast<double>(splitmix64_mix(key + kSplitMix64Gamma) >> 11) * 0x1.0p-53;
}

}  // namespace jcdc
