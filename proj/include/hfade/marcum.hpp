#pragma once

// Generalized Marcum Q-function Q_u(a, b) for integer order u >= 1, via the
// canonical noncentral-chi-square tail series: a Poisson mixture of
// regularized upper incomplete gammas. Absolute error <= 1e-12.

#include <cmath>

#include "hfade/errors.hpp"
#include "hfade/gamma.hpp"

namespace hfade {

inline double marcum_q(int u, double a, double b) {
    if (u < 1) throw DomainError("marcum_q: order u must be >= 1");
    if (a < 0.0 || b < 0.0) throw DomainError("marcum_q: a, b must be non-negative");
    if (b == 0.0) return 1.0;
    const double x = 0.5 * b * b;   // gamma-tail argument
    const double m = 0.5 * a * a;   // Poisson mean
    if (m == 0.0) return upper_gamma_regularized(static_cast<double>(u), x);

    // Q_u(a,b) = sum_k e^{-m} m^k / k! * Q(u+k, x).
    // Start below the Poisson mode (mass above machine precision) and ascend
    // with the stable recurrence Q(v+1,x) = Q(v,x) + x^v e^{-x} / Gamma(v+1).
    int k_lo = 0;
    if (m > 25.0) {
        k_lo = static_cast<int>(m - 12.0 * std::sqrt(m) - 5.0);
        if (k_lo < 0) k_lo = 0;
    }
    const double v0 = static_cast<double>(u + k_lo);
    double q = upper_gamma_regularized(v0, x);
    double inc = std::exp(v0 * std::log(x) - x - std::lgamma(v0 + 1.0));
    double pois = std::exp(-m + k_lo * std::log(m) - std::lgamma(k_lo + 1.0));
    double acc = pois * q;
    double cum = pois;
    for (int k = k_lo + 1; k < k_lo + 200000; ++k) {
        q += inc;                                // now Q(u+k, x)
        inc *= x / (u + k);
        pois *= m / k;
        acc += pois * q;
        cum += pois;
        // Q <= 1, so the skipped tail mass bounds the truncation error.
        if (1.0 - cum < 1e-15 && k > m) break;
        if (pois < 1e-18 && k > m) break;
    }
    if (acc > 1.0) acc = 1.0;  // guard against last-ulp drift
    return acc;
}

}  // namespace hfade
