#pragma once

#include <cmath>
#include <cstdint>

namespace tscan {

// 64-bit finalizer from SplitMix64 (Steele, Lea & Flood / Stafford mix13
// constants).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// SplitMix64 stream. A substream is derived by mixing the replication index
// into the root seed, so replication r of a run is the same sequence no
// matter how replications are scheduled across workers.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static SplitMix64 substream(std::uint64_t root_seed, std::uint64_t index) {
        return SplitMix64(mix64(root_seed ^ mix64(index * 0xA24BAED4963EE407ULL + 1)));
    }

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0,1) with 53 random bits.
    double next_double() { return (next() >> 11) * 0x1.0p-53; }

    // Uniform on (0,1].
    double next_double_open() { return ((next() >> 11) + 1.0) * 0x1.0p-53; }

    // Standard normal by Marsaglia's polar method; the spare value is cached.
    double next_gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * next_double() - 1.0;
            v = 2.0 * next_double() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        has_spare_ = true;
        return u * m;
    }

    // Exponential with the given rate.
    double next_exponential(double rate) { return -std::log(next_double_open()) / rate; }

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace tscan
