#pragma once

// Monte Carlo estimators of the three metrics, used as the end-to-end
// acceptance oracle. Sample means use deterministic pairwise summation so
// results are bit-stable on a platform and accumulation-stable across them.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hfade/marcum.hpp"
#include "hfade/metrics.hpp"
#include "hfade/quadrature.hpp"
#include "hfade/sampler.hpp"

namespace hfade {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long n_samples = 0;
    std::uint64_t seed = 0;
};

namespace detail {

struct MeanVar {
    double mean, se;
};

inline MeanVar mean_and_se(const std::vector<double>& x) {
    const double n = static_cast<double>(x.size());
    const double m = pairwise_sum(x) / n;
    std::vector<double> sq(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) sq[i] = (x[i] - m) * (x[i] - m);
    const double var = pairwise_sum(sq) / (n - 1.0);
    return {m, std::sqrt(var / n)};
}

}  // namespace detail

// Sample-average of (1+gamma)^{-A} mapped through -log2(.)/A; the standard
// error propagates through the log by the delta method.
inline McEstimate mc_effective_rate(const FadingParams& fp, const ErConfig& er, std::uint64_t seed,
                                    std::size_t n_samples) {
    if (n_samples < 10000) throw DomainError("mc_effective_rate: need at least 1e4 samples");
    er.validate();
    std::vector<double> x = sample_snr(fp, seed, n_samples);
    for (double& g : x) g = std::pow(1.0 + g, -er.A);
    const auto mv = detail::mean_and_se(x);
    McEstimate out;
    out.mean = -std::log2(mv.mean) / er.A;
    out.std_error = mv.se / (mv.mean * er.A * std::log(2.0));
    out.n_samples = static_cast<long>(n_samples);
    out.seed = seed;
    return out;
}

// Sample-average of the conditional detection probability Q_u(sqrt(2g), sqrt(lambda)).
inline McEstimate mc_adp(const FadingParams& fp, const EdConfig& ed, std::uint64_t seed,
                         std::size_t n_samples) {
    if (n_samples < 10000) throw DomainError("mc_adp: need at least 1e4 samples");
    ed.validate();
    std::vector<double> x = sample_snr(fp, seed, n_samples);
    const double sl = std::sqrt(ed.lambda);
    for (double& g : x) g = marcum_q(ed.u, std::sqrt(2.0 * g), sl);
    const auto mv = detail::mean_and_se(x);
    return {mv.mean, mv.se, static_cast<long>(n_samples), seed};
}

// Sample-average of the conditional AUC (the quantity the average-AUC
// integral actually averages).
inline McEstimate mc_avg_auc(const FadingParams& fp, int u, std::uint64_t seed,
                             std::size_t n_samples) {
    if (n_samples < 10000) throw DomainError("mc_avg_auc: need at least 1e4 samples");
    std::vector<double> x = sample_snr(fp, seed, n_samples);
    for (double& g : x) g = auc_awgn(u, g);
    const auto mv = detail::mean_and_se(x);
    return {mv.mean, mv.se, static_cast<long>(n_samples), seed};
}

}  // namespace hfade
