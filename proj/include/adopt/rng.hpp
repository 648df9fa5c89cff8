#pragma once

// Deterministic random streams. Every random draw in the simulator flows from
// one scenario seed through named substreams, so re-running with the same seed
// replays byte-identically and toggling one consumer (e.g. noise) cannot shift
// the draws of another (e.g. traffic).
//
// std::mt19937_64 output is pinned by the standard; the distribution mappings
// are hand-rolled here because std::normal_distribution and friends are
// implementation-defined and we freeze seeded values in tests.

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace adopt {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// FNV-1a, used to fold substream names into the seed
inline std::uint64_t hash_name(std::string_view name) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : name) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    RngStream(std::uint64_t seed, std::string_view substream)
        : gen_(splitmix64(seed ^ hash_name(substream))) {}

    std::uint64_t next_u64() { return gen_(); }

    // unbiased bounded draw (Lemire's multiply-shift with rejection)
    std::uint64_t below(std::uint64_t n) {
        __uint128_t m = static_cast<__uint128_t>(next_u64()) * n;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < n) {
            std::uint64_t threshold = (0 - n) % n;
            while (lo < threshold) {
                m = static_cast<__uint128_t>(next_u64()) * n;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    // uniform in [0, 1) with 53-bit resolution
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double gaussian(double mean, double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + sigma * spare_;
        }
        // Box-Muller; u clamped away from 0 so log stays finite
        double u = uniform01();
        if (u < 1e-300) u = 1e-300;
        double v = uniform01();
        double r = std::sqrt(-2.0 * std::log(u));
        double theta = 2.0 * M_PI * v;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + sigma * r * std::cos(theta);
    }

    double exponential(double mean) {
        double u = uniform01();
        if (u > 1.0 - 1e-16) u = 1.0 - 1e-16;
        return -mean * std::log1p(-u);
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace adopt
