#pragma once

// Monte Carlo SNR sampler. Draws the two branch powers as noncentral
// chi-square variates via the exact Poisson-gamma mixture
//   X ~ s^2 * Gamma(nu/2 + Poisson(delta/2), scale 2),  delta = lam^2 / s^2,
// sums them, and maps W -> gamma = gamma_bar * W^{2/alpha} (the power-law
// forced by the exponential kernel of the SNR density). Fixed-size blocks
// with one RNG stream per block keep the output identical regardless of how
// callers parallelize.

#include <cstdint>
#include <vector>

#include "hfade/fading.hpp"
#include "hfade/rng.hpp"

namespace hfade {

inline constexpr std::size_t kSamplerBlock = 65536;

// Fill `out` with the W draws for one block (used by the MC module too).
inline void sample_power_block(const BranchModel& b, std::uint64_t seed, std::uint64_t block,
                               std::size_t count, double* out) {
    CounterRng rng(seed, block);
    const double dx = b.lam2_x / b.s2_x;
    const double dy = b.lam2_y / b.s2_y;
    for (std::size_t i = 0; i < count; ++i) {
        const double kx = static_cast<double>(rng.next_poisson(0.5 * dx));
        const double ky = static_cast<double>(rng.next_poisson(0.5 * dy));
        const double X = b.s2_x * 2.0 * rng.next_gamma(0.5 * b.nu_x + kx);
        const double Y = b.s2_y * 2.0 * rng.next_gamma(0.5 * b.nu_y + ky);
        out[i] = X + Y;
    }
}

inline std::vector<double> sample_snr(const FadingParams& fp, std::uint64_t seed,
                                      std::size_t count) {
    if (count < 1) throw DomainError("sample_snr: count must be >= 1");
    fp.validate();
    const BranchModel b = branch_model(fp);
    std::vector<double> g(count);
    const double inv_half_alpha = 2.0 / fp.alpha;
    for (std::size_t start = 0, block = 0; start < count; start += kSamplerBlock, ++block) {
        const std::size_t n = std::min(kSamplerBlock, count - start);
        sample_power_block(b, seed, block, n, g.data() + start);
    }
    for (double& v : g) v = fp.gamma_bar * std::pow(v, inv_half_alpha);
    return g;
}

}  // namespace hfade
