#ifndef WCCA_RNG_HPP
#define WCCA_RNG_HPP

#include <cmath>
#include <cstdint>

namespace wcca {

/// SplitMix64 step; used both as a generator seeder and as a hash mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Stateless finalizer with full avalanche; distinct inputs map to
/// effectively independent outputs.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/**
 * xoshiro256++ with per-stream keying.
 *
 * Streams are identified by (master_seed, key_a, key_b); the replicate
 * runner keys one stream per (replicate, subject) so results do not
 * depend on thread schedule. All floating-point draws are produced by
 * explicit formulas (no std::distribution), so a given stream yields
 * the same values on every platform.
 */
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t key_a = 0, std::uint64_t key_b = 0) {
        // Chain a full avalanche per key so that every (seed, key_a, key_b)
        // triple lands on an unrelated stream; folding keys in with xor or
        // addition alone leaves lattice collisions across nearby triples.
        std::uint64_t h = mix64(master_seed + 0x9E3779B97F4A7C15ULL);
        h = mix64(h ^ (key_a + 0x6C62272E07BB0142ULL));
        h = mix64(h ^ (key_b + 0x27D4EB2F165667C5ULL));
        for (auto& word : state_) word = splitmix64(h);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1]; safe as a log() argument.
    double uniform01_open_low() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform on [a, b).
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }

    /// Standard normal via Box-Muller; caches the second variate.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01_open_low();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * M_PI * u2;
        spare_ = radius * std::sin(angle);
        has_spare_ = true;
        return radius * std::cos(angle);
    }

    /// N(0,1) truncated to [-1, 1], drawn by rejection (accept rate ~0.68).
    double truncated_normal_pm1() {
        for (;;) {
            const double z = normal();
            if (z >= -1.0 && z <= 1.0) return z;
        }
    }

    /// Random permutation of {0, .., n-1} by Fisher-Yates.
    template <typename IndexVector>
    void shuffle(IndexVector& idx) {
        const std::size_t n = idx.size();
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(next_u64() % i);
            std::swap(idx[i - 1], idx[j]);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace wcca

#endif // WCCA_RNG_HPP
