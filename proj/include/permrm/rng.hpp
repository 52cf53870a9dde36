#pragma once

#include <cmath>
#include <cstdint>

namespace permrm {

/// SplitMix64 generator. Chosen over std::mt19937 because its output is a
/// short, well-defined integer recurrence, so simulation results are
/// bit-identical across standard libraries and platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never returns 0 so it is safe under log().
    double uniform() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }

    /// Bernoulli(1/2) bit.
    std::uint8_t bit() { return static_cast<std::uint8_t>(next_u64() >> 63); }

    /// Integer uniform on [0, bound) by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    /// Standard normal via Box-Muller. The std:: distributions are not
    /// reproducible across implementations; this is.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 6.283185307179586476925286766559 * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Mixes (seed, a, b) into an independent stream seed, so each Monte Carlo
/// trial owns its own generator regardless of evaluation order.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    Rng mix(seed ^ (a * 0xd6e8feb86659fd93ULL) ^ (b * 0xa5a5a5a5a5a5a5a5ULL));
    mix.next_u64();
    return mix.next_u64();
}

} // namespace permrm
