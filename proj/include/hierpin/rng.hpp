#pragma once

// Counter-based random streams. Every draw is a pure function of
// (seed, purpose, w0, w1, w2, w3), so the same experiment produces the same
// numbers no matter how the work is split across threads or runs.

#include <cmath>
#include <cstdint>

namespace hierpin {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

struct CounterRng {
    std::uint64_t key = 0;

    static CounterRng from_seed(std::uint64_t seed, std::uint64_t purpose = 0) {
        return CounterRng{splitmix64(seed ^ splitmix64(purpose ^ 0x6a09e667f3bcc909ULL))};
    }

    std::uint64_t bits(std::uint64_t w0, std::uint64_t w1,
                       std::uint64_t w2, std::uint64_t w3) const {
        std::uint64_t h = key;
        h = splitmix64(h ^ (w0 + 0x243f6a8885a308d3ULL));
        h = splitmix64(h ^ (w1 + 0x13198a2e03707344ULL));
        h = splitmix64(h ^ (w2 + 0xa4093822299f31d0ULL));
        h = splitmix64(h ^ (w3 + 0x082efa98ec4e6c89ULL));
        return h;
    }

    // uniform on (0,1]; never returns 0 so log() stays finite
    double uniform(std::uint64_t w0, std::uint64_t w1,
                   std::uint64_t w2, std::uint64_t w3) const {
        return (double)((bits(w0, w1, w2, w3) >> 11) + 1) * 0x1.0p-53;
    }

    // standard normal via Box-Muller; consumes sub-draws 2*w3 and 2*w3+1
    double normal(std::uint64_t w0, std::uint64_t w1,
                  std::uint64_t w2, std::uint64_t w3) const {
        const double u1 = uniform(w0, w1, w2, 2 * w3);
        const double u2 = uniform(w0, w1, w2, 2 * w3 + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double rademacher(std::uint64_t w0, std::uint64_t w1,
                      std::uint64_t w2, std::uint64_t w3) const {
        return (bits(w0, w1, w2, w3) >> 63) ? 1.0 : -1.0;
    }

    // index in [0,n) by 128-bit multiply-shift (deterministic, unbiased to ~n/2^64)
    std::uint64_t index(std::uint64_t n, std::uint64_t w0, std::uint64_t w1,
                        std::uint64_t w2, std::uint64_t w3) const {
        return (std::uint64_t)(((__uint128_t)bits(w0, w1, w2, w3) * n) >> 64);
    }
};

}  // namespace hierpin
