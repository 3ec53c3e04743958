#pragma once

// Splittable counter-style PRNG plus the variate generators the SNR sampler
// needs (normal, gamma with real shape, Poisson). Self-contained so that
// sequences are identical across standard libraries and platforms.

#include <cmath>
#include <cstdint>

#include "hfade/errors.hpp"
#include "hfade/gamma.hpp"

namespace hfade {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
}  // namespace detail

// Independent stream per (seed, stream) pair; streams are advanced
// SplitMix64 sequences whose starting states are themselves mixed, so
// distinct block indices give uncorrelated subsequences.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed ^ 0x2545f4914f6cdd1dull;
        detail::splitmix64(s);
        s ^= stream * 0x9e3779b97f4a7c15ull + 0x6a09e667f3bcc909ull;
        detail::splitmix64(s);
        state_ = s;
    }

    std::uint64_t next_u64() { return detail::splitmix64(state_); }

    // Uniform in (0, 1): never exactly zero so logs are safe.
    double next_double() {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double next_normal() {
        // Box-Muller, first variate only (rejection-free, deterministic draw count).
        const double u1 = next_double();
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    }

    // Marsaglia-Tsang squeeze for shape >= 1, boosted by u^{1/a} below 1. Scale 1.
    double next_gamma(double shape) {
        if (!(shape > 0.0)) throw DomainError("next_gamma: shape must be positive");
        if (shape < 1.0) {
            const double u = next_double();
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = next_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = next_double();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    // Exact Poisson; multiplication method in chunks so large means stay exact.
    std::uint64_t next_poisson(double mean) {
        if (mean < 0.0) throw DomainError("next_poisson: mean must be non-negative");
        std::uint64_t total = 0;
        while (mean > 30.0) {
            total += poisson_small(30.0);
            mean -= 30.0;
        }
        return total + poisson_small(mean);
    }

  private:
    std::uint64_t poisson_small(double mean) {
        if (mean <= 0.0) return 0;
        const double limit = std::exp(-mean);
        double prod = next_double();
        std::uint64_t k = 0;
        while (prod > limit) {
            prod *= next_double();
            ++k;
        }
        return k;
    }

    std::uint64_t state_;
};

}  // namespace hfade
