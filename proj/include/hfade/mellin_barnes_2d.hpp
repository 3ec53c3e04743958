#pragma once

// Double Mellin-Barnes integrals over two vertical contours,
//
//   (1/(2 pi i))^2 \int\int F(t1, t2) dt1 dt2,
//   F = const * prod Gamma(c + d1 t1 + d2 t2) / prod Gamma(...)
//           * prod base^(e1 t1 + e2 t2),
//
// by tensor-product trapezoid quadrature with sinh-transformed nodes and
// tail truncation, mirroring the univariate engine. Raises ConvergenceError
// when the integrand fails to decay along either line (a* <= 0 cases must be
// evaluated by residue summation instead; see the detection-metric module).

#include <cmath>
#include <complex>
#include <vector>

#include "hfade/contour.hpp"
#include "hfade/errors.hpp"
#include "hfade/gamma.hpp"

namespace hfade {

struct GammaFactor2D {
    double c;
    double d1;
    double d2;
};

struct PowerTerm2D {
    double base;  // strictly positive
    double e1;
    double e2;
};

struct GammaProductIntegrand2D {
    std::vector<GammaFactor2D> numerator;
    std::vector<GammaFactor2D> denominator;
    std::vector<PowerTerm2D> powers;
    double constant = 1.0;

    GammaProductIntegrand2D() = default;
    GammaProductIntegrand2D(std::vector<GammaFactor2D> num, std::vector<GammaFactor2D> den,
                            std::vector<PowerTerm2D> pow, double k = 1.0)
        : numerator(std::move(num)), denominator(std::move(den)), powers(std::move(pow)), constant(k) {
        validate();
    }

    // All numerator gamma arguments must have positive real part at (x1,x2).
    bool contours_admissible(double x1, double x2, double margin = 1e-9) const {
        for (const auto& f : numerator)
            if (f.c + f.d1 * x1 + f.d2 * x2 <= margin) return false;
        return true;
    }

    void validate() const {
        if (numerator.empty())
            throw DomainError("GammaProductIntegrand2D: numerator must be non-empty");
        for (const auto& t : powers)
            if (!(t.base > 0.0)) throw DomainError("GammaProductIntegrand2D: power bases must be positive");
        // A contour placement must exist; coarse feasibility search.
        for (double x1 = -4.0; x1 <= 4.0; x1 += 0.125)
            for (double x2 = -4.0; x2 <= 4.0; x2 += 0.125)
                if (contours_admissible(x1, x2, 1e-3)) return;
        throw ContourError("GammaProductIntegrand2D: no admissible contour placement found");
    }

    std::complex<double> log_eval(std::complex<double> t1, std::complex<double> t2) const {
        std::complex<double> lf = std::log(std::complex<double>(constant, 0.0));
        for (const auto& f : numerator) lf += log_gamma_complex(f.c + f.d1 * t1 + f.d2 * t2);
        for (const auto& f : denominator) lf -= log_gamma_complex(f.c + f.d1 * t1 + f.d2 * t2);
        for (const auto& t : powers) lf += (t.e1 * t1 + t.e2 * t2) * std::log(t.base);
        return lf;
    }
};

struct Mb2dOptions {
    double tolerance = 1e-8;
    double step0 = 0.5;
    int max_refinements = 5;
    int max_nodes_per_side = 1200;
};

struct Mb2dValue {
    double value = 0.0;
    double error = 0.0;
};

namespace detail {

// Truncation half-range along one axis (the other variable held at its
// abscissa): walk out until the log-magnitude drops `drop` below its maximum.
template <class LogF2>
double axis_range(LogF2&& lf, bool second_axis, double x1, double x2, double step,
                  double drop, int max_nodes) {
    // Gamma-product decay reaches any realistic cutoff well before w = 8.5
    // (tau ~ 2500); hitting the cap means the vertical integral diverges.
    double peak = -std::numeric_limits<double>::infinity();
    int below = 0;
    for (int k = 0; k <= max_nodes && k * step <= 8.5; ++k) {
        const double w = k * step;
        const double tau = std::sinh(w);
        std::complex<double> v = second_axis
            ? lf(std::complex<double>(x1, 0.0), std::complex<double>(x2, tau))
            : lf(std::complex<double>(x1, tau), std::complex<double>(x2, 0.0));
        const double mag = v.real();
        if (std::isfinite(mag) && mag > peak) peak = mag;
        if (std::isfinite(mag) && mag < peak - drop) {
            if (++below >= 3) return w;
        } else {
            below = 0;
        }
    }
    throw ConvergenceError("mellin_barnes_2d: integrand does not decay along a contour");
}

}  // namespace detail

inline Mb2dValue mellin_barnes_2d(const GammaProductIntegrand2D& integrand, double contour1,
                                  double contour2, const Mb2dOptions& opt = {}) {
    if (!integrand.contours_admissible(contour1, contour2))
        throw ContourError("mellin_barnes_2d: contour abscissas violate pole constraints");

    auto lf = [&](std::complex<double> t1, std::complex<double> t2) -> std::complex<double> {
        try {
            return integrand.log_eval(t1, t2);
        } catch (const PoleError&) {
            return {-std::numeric_limits<double>::infinity(), 0.0};
        }
    };

    const double drop = -std::log(opt.tolerance) + 9.0;  // ~tol*1e-4 relative cut
    const double w1_max =
        detail::axis_range(lf, false, contour1, contour2, opt.step0, drop, opt.max_nodes_per_side);
    const double w2_max =
        detail::axis_range(lf, true, contour1, contour2, opt.step0, drop, opt.max_nodes_per_side);

    const double shift = lf({contour1, 0.0}, {contour2, 0.0}).real();
    if (!std::isfinite(shift))
        throw ContourError("mellin_barnes_2d: integrand not finite at the contour center");

    const double two_pi = 2.0 * kPi;
    // One tensor trapezoid pass at step h. Conjugate symmetry (t1,t2) ->
    // (conj t1, conj t2) halves the grid: rows k2 > 0 count twice via Re.
    auto tensor_pass = [&](double h) -> double {
        const int K1 = static_cast<int>(std::ceil(w1_max / h)) + 2;
        const int K2 = static_cast<int>(std::ceil(w2_max / h)) + 2;
        double total = 0.0;
        for (int k2 = 0; k2 <= K2; ++k2) {
            const double w2 = k2 * h;
            const double tau2 = std::sinh(w2);
            const double jac2 = std::cosh(w2);
            const std::complex<double> t2(contour2, tau2);
            double row = 0.0;  // sum over the full t1 line of Re g (k2>0) pairs
            double row_peak = -std::numeric_limits<double>::infinity();
            for (int k1 = (k2 == 0 ? 0 : -K1); k1 <= K1; ++k1) {
                const double w1 = k1 * h;
                const double tau1 = std::sinh(w1);
                const double jac1 = std::cosh(w1);
                const std::complex<double> t1(contour1, tau1);
                const std::complex<double> lg = lf(t1, t2);
                const double mag = lg.real();
                if (!std::isfinite(mag)) continue;
                if (mag > row_peak) row_peak = mag;
                double v = std::exp(mag - shift) * std::cos(lg.imag()) * jac1 * jac2;
                if (k2 == 0 && k1 > 0) v *= 2.0;  // center row: pair (k1,-k1)
                row += v;
            }
            if (k2 == 0) {
                total += row;
            } else {
                total += 2.0 * row;  // pair (k2,-k2) with full t1 line
            }
            if (row_peak < shift - drop && k2 * h > 0.5 * w2_max) break;
        }
        return total * h * h;
    };

    double h = opt.step0;
    double prev = tensor_pass(h);
    double cur = prev;
    double err = std::numeric_limits<double>::infinity();
    for (int r = 0; r < opt.max_refinements; ++r) {
        h *= 0.5;
        cur = tensor_pass(h);
        err = std::abs(cur - prev);
        prev = cur;
        if (err < opt.tolerance * std::max(1.0, std::abs(cur)) * 0.1) break;
    }

    Mb2dValue out;
    out.value = std::exp(shift) * cur / (two_pi * two_pi);
    out.error = std::exp(shift) * err / (two_pi * two_pi);
    const double tol_eff = opt.tolerance * std::max(1.0, std::abs(out.value));
    if (out.error > tol_eff)
        throw ConvergenceError("mellin_barnes_2d: error estimate above tolerance");
    return out;
}

}  // namespace hfade
