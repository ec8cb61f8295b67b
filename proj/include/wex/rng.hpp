#ifndef WEX_RNG_HPP
#define WEX_RNG_HPP

#include <array>
#include <cmath>
#include <cstdint>

namespace wex {

/**
 * Counter-based PRNG: Philox4x32-10 (Salmon et al., SC'11).
 *
 * Keyed by a 64-bit seed; the 128-bit counter is advanced per block.
 * Distinct keys give statistically independent streams, so per-trial
 * generators never share state. Period per stream exceeds 2^64.
 */
class Philox {
public:
    explicit Philox(std::uint64_t key)
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

    std::uint32_t next_u32() {
        if (buf_pos_ == 4) refill();
        return buf_[buf_pos_++];
    }

    std::uint64_t next_u64() {
        const std::uint64_t lo = next_u32();
        const std::uint64_t hi = next_u32();
        return lo | (hi << 32);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_double();
        double u2 = next_double();
        if (u1 < 1e-300) u1 = 1e-300;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    /// Uniform direction on the unit sphere (normalized 3D Gaussian).
    std::array<double, 3> unit_sphere() {
        while (true) {
            const double x = normal(), y = normal(), z = normal();
            const double n = std::sqrt(x * x + y * y + z * z);
            if (n > 1e-12) return {x / n, y / n, z / n};
        }
    }

    /// Raw block function, exposed for known-answer tests.
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ULL * ctr[0];
            const std::uint64_t p1 = 0xCD9E8D57ULL * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += 0x9E3779B9U;
            key[1] += 0xBB67AE85U;
        }
        return ctr;
    }

private:
    void refill() {
        buf_ = block({static_cast<std::uint32_t>(counter_),
                      static_cast<std::uint32_t>(counter_ >> 32),
                      static_cast<std::uint32_t>(counter_hi_),
                      static_cast<std::uint32_t>(counter_hi_ >> 32)},
                     key_);
        if (++counter_ == 0) ++counter_hi_;
        buf_pos_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t counter_ = 0;
    std::uint64_t counter_hi_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int buf_pos_ = 4;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/**
 * Per-trial seed derivation: the (i+1)-th output of SplitMix64 seeded with
 * base_seed, evaluated in counter mode so it is O(1) in the trial index.
 * Stable across versions; summaries record the derived seeds.
 */
inline std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    std::uint64_t z = base_seed + (trial_index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace wex

#endif // WEX_RNG_HPP
