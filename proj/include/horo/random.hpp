#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "horo/moebius.hpp"
#include "horo/transverse.hpp"

namespace horo {

/// Seeded generator whose draws are identical across standard libraries:
/// only the raw mt19937_64 stream is used, never std distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [0, n); n > 0.
    std::uint64_t index(std::uint64_t n) { return eng_() % n; }

    /// Uniform rotation (Shoemake's subgroup algorithm).
    Quaternion rotation()
    {
        const double u1 = uniform(), u2 = uniform(), u3 = uniform();
        const double r1 = std::sqrt(1.0 - u1), r2 = std::sqrt(u1);
        return Quaternion(r2 * std::cos(kTwoPi * u3), r1 * std::sin(kTwoPi * u2),
                          r1 * std::cos(kTwoPi * u2), r2 * std::sin(kTwoPi * u3));
    }

private:
    std::mt19937_64 eng_;
};

/// Per-item seed derived from a run seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace horo
