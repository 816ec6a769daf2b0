#pragma once

#include <cmath>
#include <cstdint>

namespace dnf {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stable key derivation for per-simulation streams: seeds depend only on
// (master seed, condition index, sim index), never on execution order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
    std::uint64_t k = splitmix64(master ^ 0x6a09e667f3bcc908ULL);
    k = splitmix64(k ^ a);
    k = splitmix64(k ^ b);
    return k;
}

// Deterministic standard-normal stream (splitmix64 + Box-Muller). Hand-rolled
// so output does not depend on the standard library's distribution internals.
class NoiseStream {
public:
    explicit NoiseStream(std::uint64_t seed) : state_(seed) {}

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1], u2 in [0, 1)
        const double u1 = (static_cast<double>(next_() >> 11) + 1.0) * 0x1p-53;
        const double u2 = static_cast<double>(next_() >> 11) * 0x1p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t next_() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace dnf
