#pragma once

#include <cstdint>

namespace fracsob {

// SplitMix64 (Steele/Lea/Flood, "Fast splittable pseudorandom number
// generators", 2014). Chosen over <random> engines+distributions because the
// exact output stream must be reproducible across languages and standard
// libraries: state advances by the golden-ratio increment 0x9E3779B97F4A7C15,
// and each output is the finalizing mix below. Doubles are built from the top
// 53 bits, so uniform01() is in [0,1) and uniformSigned() in [-1,1).
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniformSigned() { return 2.0 * uniform01() - 1.0; }
};

// Stable seed derivation for independent substreams (per trial/scale/p), so
// parallel sweeps draw identical fields regardless of scheduling.
inline std::uint64_t deriveSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0,
                                std::uint64_t c = 0) {
    SplitMix64 s(base ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL) ^
                 (c * 0x165667B19E3779F9ULL));
    return s.next();
}

}  // namespace fracsob
