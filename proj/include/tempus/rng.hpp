// Counter-based per-stream RNG for the transport kernel: each photon owns an
// independent splitmix64 stream keyed by (seed, photon index), so results are
// independent of how photons are distributed over threads.
#pragma once

#include <cstdint>

namespace tempus {

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// One 64-bit stream key per (seed, photon index) pair.
inline std::uint64_t photon_stream_seed(std::uint64_t seed, std::uint64_t idx) {
    SplitMix64 s{seed ^ (idx * 0xA24BAED4963EE407ull)};
    return s.next();
}

// Map a 64-bit word to (0, 1]; the +1 keeps log(u) finite.
inline double u01(std::uint64_t z) {
    return static_cast<double>((z >> 11) + 1) * 0x1.0p-53;
}

} // namespace tempus
