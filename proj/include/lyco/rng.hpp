#pragma once

#include <cstdint>

namespace lyco {

// SplitMix64 finalizer. All randomness in the library is counter-based:
// a draw is a pure function of (seed, stream, counter), so results never
// depend on evaluation order or worker count.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t hash3(std::uint64_t seed, std::uint64_t stream, std::uint64_t ctr) {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ull);
    h = mix64(h ^ stream);
    h = mix64(h ^ ctr);
    return h;
}

// uniform in [0,1), 53 bits
inline double u01(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

// Derive a child seed; used for per-replica / per-grid-point streams.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return hash3(root, 0x5eed0007ull, index);
}

class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

    double next_u01() { return u01(hash3(seed_, stream_, ctr_++)); }
    std::uint64_t next_u64() { return hash3(seed_, stream_, ctr_++); }
    bool bernoulli(double p) { return next_u01() < p; }

    // integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t ctr_ = 0;
};

} // namespace lyco
