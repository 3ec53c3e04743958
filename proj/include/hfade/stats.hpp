#pragma once

// Kolmogorov-Smirnov statistics used by the sampler acceptance tests.

#include <algorithm>
#include <cmath>
#include <vector>

#include "hfade/errors.hpp"

namespace hfade {

// One-sample KS distance between an empirical sample and a model CDF.
// `cdf` must be nondecreasing with range [0,1].
template <class Cdf>
double ks_statistic(std::vector<double> samples, Cdf&& cdf) {
    if (samples.empty()) throw DomainError("ks_statistic: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double F = cdf(samples[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
    }
    return d;
}

// Two-sample KS distance.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        const double fa = static_cast<double>(i) / a.size();
        const double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::abs(fa - fb));
    }
    return d;
}

// Critical value c(alpha) * sqrt((n+m)/(n*m)); c(0.01) = 1.628.
inline double ks_two_sample_critical(std::size_t n, std::size_t m, double c_alpha = 1.628) {
    return c_alpha * std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * m));
}

}  // namespace hfade
