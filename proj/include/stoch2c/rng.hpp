#pragma once

#include "stoch2c/simplex.hpp"

#include <cstdint>

namespace stoch2c {

// Counter-based generation: every uniform is a pure function of
// (seed, canonical simplex encoding).  Integer-only mixing makes the values
// identical across platforms and lets draws happen in any order.

inline std::uint64_t mix64(std::uint64_t z) {
    // splitmix64 finalizer
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash_absorb(std::uint64_t state, std::uint64_t value) {
    return mix64(state + 0x9E3779B97F4A7C15ULL * (value + 1));
}

inline double uniform01_from_bits(std::uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline std::uint64_t simplex_key(std::uint64_t seed, const Simplex& s) {
    std::uint64_t h = mix64(seed ^ 0xA3C59AC2F0E16B61ULL);
    h = hash_absorb(h, static_cast<std::uint64_t>(s.dim()) + 0x51ULL);
    for (VertexId v : s.vertices()) h = hash_absorb(h, static_cast<std::uint64_t>(v));
    return h;
}

inline double simplex_uniform(std::uint64_t seed, const Simplex& s) {
    return uniform01_from_bits(simplex_key(seed, s));
}

// Per-trial seeds for experiment sweeps.  Two independently keyed 64-bit
// lanes (128 bits of state) keep distinct (stream, trial) pairs collision
// free for all practical grid sizes.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t trial) {
    std::uint64_t a = mix64(master ^ 0x6C62272E07BB0142ULL);
    a = hash_absorb(a, stream);
    a = hash_absorb(a, trial);
    std::uint64_t b = mix64(master ^ 0x27220A95FE7A94F9ULL);
    b = hash_absorb(b, trial);
    b = hash_absorb(b, stream);
    return mix64(a + 0x9E3779B97F4A7C15ULL * b);
}

// Small counter RNG for sampled scans (domain sampling, subset descent).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : state_(mix64(seed ^ 0x853C49E6748FEA9BULL)) {}
    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix64(state_);
    }
    double next_uniform() { return uniform01_from_bits(next_u64()); }
    // uniform in [0, n)
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

private:
    std::uint64_t state_;
};

} // namespace stoch2c
