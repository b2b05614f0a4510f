#pragma once

#include <cstdint>
#include <random>

namespace sca {

/// Seeded RNG with hand-rolled distributions.
///
/// std::mt19937_64 is bit-identical everywhere, but the standard
/// distributions are implementation-defined; reproducibility across
/// compilers requires drawing uniforms ourselves.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound).
    std::uint64_t uniform_index(std::uint64_t bound) {
        // rejection sampling keeps the draw unbiased
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    std::uint64_t raw() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace sca
