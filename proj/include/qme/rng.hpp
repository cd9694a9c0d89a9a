#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

#include "qme/complex_matrix.hpp"

namespace qme {

using RngSeed = std::uint64_t;

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// xoshiro256++ with splitmix64 seeding and a Box-Muller normal generator.
// Hand-rolled because std::normal_distribution is not bit-stable across
// standard libraries and ensembles must be bit-identical per seed.
class Rng {
public:
    explicit Rng(RngSeed seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform integer in [lo, hi] inclusive.
    int uniform_int(int lo, int hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<int>(next_u64() % span);
    }

    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        // u1 in (0, 1] keeps the log finite.
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * 3.14159265358979323846 * u2;
        cached_ = r * std::sin(theta);
        have_cached_ = true;
        return r * std::cos(theta);
    }

    // Standard complex normal: variance 1 split evenly over both parts.
    ComplexScalar complex_normal() {
        const double inv_sqrt2 = 0.70710678118654752440;
        return {normal() * inv_sqrt2, normal() * inv_sqrt2};
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t s_[4];
    bool have_cached_ = false;
    double cached_ = 0.0;
};

// Derives an independent stream seed from (suite seed, check id, trial index).
// Running trials in parallel therefore never changes results.
inline RngSeed derive_stream(RngSeed seed, std::string_view id, std::uint64_t trial) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a over the id
    for (char c : id) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::uint64_t x = seed;
    (void)splitmix64(x);
    x ^= h;
    (void)splitmix64(x);
    x ^= trial;
    return splitmix64(x);
}

}  // namespace qme
