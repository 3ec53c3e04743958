#pragma once

// Univariate Fox H-function via direct Mellin-Barnes contour quadrature.
//
//   H^{m,n}_{p,q}[x | (a_i,A_i)_p ; (b_j,B_j)_q]
//     = (1/(2 pi i)) \int Theta(s) x^{-s} ds,
//   Theta(s) = prod_{j<=m} Gamma(b_j + B_j s) prod_{i<=n} Gamma(1 - a_i - A_i s)
//            / [ prod_{i>n} Gamma(a_i + A_i s) prod_{j>m} Gamma(1 - b_j - B_j s) ],
//
// with a vertical contour separating the poles of the first m lower-group
// gammas (left family) from the poles of the first n upper-group gammas
// (right family). The abscissa defaults to the midpoint of the admissible
// strip and is refined within the strip toward the flattest point of the
// real-axis integrand magnitude.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "hfade/contour.hpp"
#include "hfade/errors.hpp"
#include "hfade/gamma.hpp"

namespace hfade {

struct HParam {
    double a;  // location
    double A;  // positive scale
};

struct HFunctionSpec {
    int m = 0;
    int n = 0;
    std::vector<HParam> upper;  // (a_i, A_i), length p
    std::vector<HParam> lower;  // (b_j, B_j), length q

    int p() const { return static_cast<int>(upper.size()); }
    int q() const { return static_cast<int>(lower.size()); }

    void validate(double pole_tolerance = 1e-9) const {
        if (m < 0 || n < 0 || m > q() || n > p())
            throw DomainError("HFunctionSpec: require 0 <= m <= q and 0 <= n <= p");
        for (const auto& t : upper)
            if (!(t.A > 0.0)) throw DomainError("HFunctionSpec: all A_i must be positive");
        for (const auto& t : lower)
            if (!(t.A > 0.0)) throw DomainError("HFunctionSpec: all B_j must be positive");
        // Pole separation: no left-family pole may coincide with a right-family pole.
        constexpr int kPoleWindow = 48;
        for (int j = 0; j < m; ++j)
            for (int i = 0; i < n; ++i)
                for (int kl = 0; kl < kPoleWindow; ++kl)
                    for (int kr = 0; kr < kPoleWindow; ++kr) {
                        const double left = -(lower[j].a + kl) / lower[j].A;
                        const double right = (1.0 - upper[i].a + kr) / upper[i].A;
                        if (std::abs(left - right) <= pole_tolerance)
                            throw ContourError("HFunctionSpec: coincident left/right poles");
                    }
    }

    // Admissible vertical strip (L, R) for the contour abscissa.
    // L = rightmost left-family pole, R = leftmost right-family pole.
    std::pair<double, double> contour_strip() const {
        double L = -std::numeric_limits<double>::infinity();
        double R = std::numeric_limits<double>::infinity();
        for (int j = 0; j < m; ++j) L = std::max(L, -lower[j].a / lower[j].A);
        for (int i = 0; i < n; ++i) R = std::min(R, (1.0 - upper[i].a) / upper[i].A);
        return {L, R};
    }

    // Convergence parameter of the vertical-line integral; must be positive.
    double a_star() const {
        double s = 0.0;
        for (int i = 0; i < p(); ++i) s += (i < n) ? upper[i].A : -upper[i].A;
        for (int j = 0; j < q(); ++j) s += (j < m) ? lower[j].A : -lower[j].A;
        return s;
    }
};

struct HValue {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

inline std::complex<double> log_theta(const HFunctionSpec& h, std::complex<double> s) {
    std::complex<double> lt = 0.0;
    for (int j = 0; j < h.q(); ++j) {
        const std::complex<double> arg =
            (j < h.m) ? (h.lower[j].a + h.lower[j].A * s) : (1.0 - h.lower[j].a - h.lower[j].A * s);
        const std::complex<double> lg = log_gamma_complex(arg);
        lt += (j < h.m) ? lg : -lg;
    }
    for (int i = 0; i < h.p(); ++i) {
        const std::complex<double> arg =
            (i < h.n) ? (1.0 - h.upper[i].a - h.upper[i].A * s) : (h.upper[i].a + h.upper[i].A * s);
        const std::complex<double> lg = log_gamma_complex(arg);
        lt += (i < h.n) ? lg : -lg;
    }
    return lt;
}

// Pick the contour abscissa: midpoint of the admissible strip, then nudge
// toward the real-axis magnitude minimum (a saddle proxy) while keeping a
// margin from both boundaries. For one-sided strips step away from the
// finite boundary.
inline double choose_abscissa(const HFunctionSpec& h, double x) {
    auto [L, R] = h.contour_strip();
    const bool has_l = std::isfinite(L), has_r = std::isfinite(R);
    double lo, hi;
    if (has_l && has_r) {
        if (!(L < R)) throw ContourError("fox_h: empty contour strip");
        const double margin = 0.04 * (R - L);
        lo = L + margin;
        hi = R - margin;
    } else if (has_l) {
        lo = L + 0.05;
        hi = L + 12.0;
    } else if (has_r) {
        lo = R - 12.0;
        hi = R - 0.05;
    } else {
        lo = -6.0;
        hi = 6.0;
    }
    double best = 0.5 * (lo + hi);
    double best_mag = std::numeric_limits<double>::infinity();
    const int kScan = 33;
    for (int i = 0; i <= kScan; ++i) {
        const double sig = lo + (hi - lo) * i / kScan;
        double mag;
        try {
            mag = (log_theta(h, {sig, 0.0}) - sig * std::log(x)).real();
        } catch (const PoleError&) {
            continue;  // denominator zero or pole grazing; skip the candidate
        }
        if (std::isfinite(mag) && mag < best_mag) {
            best_mag = mag;
            best = sig;
        }
    }
    return best;
}

}  // namespace detail

inline HValue fox_h(const HFunctionSpec& spec, double x, const ContourOptions& opt = {}) {
    if (!(x > 0.0)) throw DomainError("fox_h: argument must be positive");
    spec.validate();
    if (spec.a_star() <= 0.0)
        throw ConvergenceError("fox_h: vertical contour integral diverges (a* <= 0)");
    const double sigma = detail::choose_abscissa(spec, x);
    const double lx = std::log(x);
    auto log_f = [&](std::complex<double> s) -> std::complex<double> {
        try {
            return detail::log_theta(spec, s) - s * lx;
        } catch (const PoleError&) {
            return {-std::numeric_limits<double>::infinity(), 0.0};
        }
    };
    const auto li = integrate_contour(log_f, sigma, opt);
    return {li.value, li.error};
}

// Convenience: the two H instances that reduce to elementary functions,
// used as identities throughout the series machinery.
inline HFunctionSpec h_exp_kernel() {
    // H^{1,0}_{0,1}[x | - ; (0,1)] = exp(-x)
    HFunctionSpec h;
    h.m = 1;
    h.n = 0;
    h.lower = {{0.0, 1.0}};
    return h;
}

inline HFunctionSpec h_power_kernel(double a) {
    // H^{1,1}_{1,1}[x | (1-a,1) ; (0,1)] = Gamma(a) (1+x)^{-a}
    HFunctionSpec h;
    h.m = 1;
    h.n = 1;
    h.upper = {{1.0 - a, 1.0}};
    h.lower = {{0.0, 1.0}};
    return h;
}

}  // namespace hfade
