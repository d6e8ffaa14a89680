#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mscvrp {

// Deterministic pseudo-random engine used by every stochastic component of a
// solver run. A run owns exactly one Rng seeded once; helpers below avoid the
// standard-library distributions so that sequences are stable across standard
// library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) { state_ = seed + 0x9e3779b97f4a7c15ull; }

    std::uint64_t next() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) {
        // Lemire's multiply-and-shift with rejection for exact uniformity.
        std::uint64_t x = next();
        __uint128_t m = static_cast<__uint128_t>(x) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = -bound % bound;
            while (lo < threshold) {
                x = next();
                m = static_cast<__uint128_t>(x) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    int int_below(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    // Uniform double in [0, 1).
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace mscvrp
