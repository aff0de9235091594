// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

namespace fbmc {

// splitmix64: the stream-split rule. Every consumer of randomness derives its
// own substream seed as substream_seed(base_seed, tag), so sweep cells and
// pipeline stages draw from disjoint deterministic streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t tag) {
    return splitmix64(base ^ splitmix64(tag));
}

// mt19937_64 plus Box-Muller. The engine's output is pinned by the standard
// and the transform is spelled out here, so streams reproduce exactly for a
// given seed.
class GaussianRng {
public:
    explicit GaussianRng(std::uint64_t seed) : eng_(seed) {}

    // uniform in (0, 1]
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
    }

    std::pair<double, double> normal_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
    }

    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace fbmc
