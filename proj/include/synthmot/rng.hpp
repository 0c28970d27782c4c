#pragma once

#include <cmath>
#include <cstdint>

#include "synthmot/vec3.hpp"

namespace synthmot {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Constants:
/// increment 0x9E3779B97F4A7C15 (2^64 / golden ratio), mix multipliers
/// 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
inline uint64_t splitmix64_mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

/// Derives an independent seed for a sub-stream. Pure avalanche mix of
/// (base, stream); identical inputs give identical outputs on every platform,
/// so generation order and thread schedule cannot change sampled values.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return splitmix64_mix(base + 0x9E3779B97F4A7C15ull * (stream + 1));
}

/// Deterministic generator with hand-rolled distributions. The standard
/// library distributions are implementation-defined, which would break
/// bit-exact reproducibility across toolchains, so everything here is spelled
/// out explicitly.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [lo, hi], both ends inclusive. Uses the widening
    /// multiply trick; bias is < 2^-64 per draw, irrelevant here.
    int64_t uniform_int(int64_t lo, int64_t hi) {
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        uint64_t r = static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * span) >> 64);
        return lo + static_cast<int64_t>(r);
    }

    /// Standard Box-Muller transform; the sine branch is cached.
    double gaussian(double mean = 0.0, double sigma = 1.0) {
        if (have_spare_) {
            have_spare_ = false;
            return mean + sigma * spare_;
        }
        double u1 = uniform();
        if (u1 < 1e-300) u1 = 1e-300;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return mean + sigma * r * std::cos(theta);
    }

    /// Knuth's product method; fine for the small rates used here.
    int poisson(double lambda) {
        if (lambda <= 0.0) return 0;
        double limit = std::exp(-lambda);
        int k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    /// Uniform direction on the unit sphere.
    Vec3 unit_vector() {
        double z = uniform(-1.0, 1.0);
        double phi = uniform(0.0, 2.0 * M_PI);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    }

private:
    uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace synthmot
