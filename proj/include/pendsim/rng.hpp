#ifndef PENDSIM_RNG_HPP
#define PENDSIM_RNG_HPP

#include <cstdint>
#include <cmath>
#include <string_view>

namespace pendsim {

/// PCG32 (XSH-RR 64/32, O'Neill 2014). Hand-rolled so streams are
/// bit-identical across standard libraries and platforms.
class Pcg32 {
public:
    explicit Pcg32(std::uint64_t seed, std::uint64_t stream = 0) {
        state_ = 0u;
        inc_ = (stream << 1u) | 1u;
        next_u32();
        state_ += seed;
        next_u32();
    }

    std::uint32_t next_u32() {
        std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        std::uint64_t hi = next_u32();
        std::uint64_t lo = next_u32();
        return static_cast<double>(((hi << 32u) | lo) >> 11u) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
    std::uint64_t inc_;
};

/// splitmix64 step; used only to spread the master seed over streams.
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// FNV-1a hash of a stream label.
inline std::uint64_t hash_label(std::string_view label) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return h;
}

/// One independent PCG32 stream per noise source, derived from the master
/// seed by a fixed label ("sensor-noise", "sensor-dropout", ...). Same seed
/// plus same label always yields the same stream.
inline Pcg32 make_stream(std::uint64_t master_seed, std::string_view label) {
    std::uint64_t x = master_seed ^ hash_label(label);
    std::uint64_t seed = splitmix64(x);
    std::uint64_t stream = splitmix64(x);
    return Pcg32(seed, stream);
}

/// Standard-normal draws via Box-Muller; caches the second variate so every
/// uniform consumed is accounted for deterministically.
class Gaussian {
public:
    double sample(Pcg32& rng) {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = rng.next_double();
        double u2 = rng.next_double();
        // Guard the log singularity at u1 == 0.
        while (u1 <= 0.0) u1 = rng.next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace pendsim

#endif
