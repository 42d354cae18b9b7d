#pragma once

#include <cstdint>
#include <random>

namespace phn {

/// Seeded deterministic RNG. mt19937_64 is fully specified by the standard
/// and the [0,1) mapping below avoids std::uniform_real_distribution, whose
/// output is implementation-defined; the same seed therefore produces the
/// same stream on every platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 bits of entropy.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        // Modulo bias is irrelevant at the ranges used here (n << 2^64).
        return engine_() % n;
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace phn
