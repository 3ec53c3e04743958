#pragma once

// Vertical-line quadrature for Mellin-Barnes integrands.
//
// Evaluates (1/(2*pi*i)) \int_{sigma-i inf}^{sigma+i inf} f(s) ds for
// integrands built from gamma-function products, which decay
// super-exponentially in |Im s| whenever the convergence parameter of the
// underlying H-function is positive. The line is parameterized as
// tau = scale*sinh(w) so that a uniform trapezoid grid in w is
// double-exponentially accurate, and the grid is truncated where the
// integrand magnitude falls below tolerance relative to its peak.
//
// Integrands are supplied in log form (complex log: magnitude + phase) so
// that gamma products with very large or very small magnitude are handled
// without overflow; the accumulation is rescaled by the observed peak.

#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <vector>

#include "hfade/errors.hpp"

namespace hfade {

struct ContourOptions {
    double tolerance = 1e-10;   // target on the result (abs, or rel when |I| > 1)
    double step0 = 0.5;         // initial trapezoid step in the sinh variable
    double sinh_scale = 1.0;
    int max_refinements = 8;
    int max_nodes_per_side = 6000;
};

struct LineIntegral {
    double value = 0.0;
    double error = 0.0;       // refinement difference + truncation bound
    double log_peak = 0.0;    // log of the largest integrand magnitude seen
    long evaluations = 0;
};

namespace detail {

// One symmetric trapezoid pass at step h. The integrand is conjugate
// symmetric (real parameters), so only w >= 0 is evaluated. Values are
// accumulated as exp(log_f - shift).
template <class LogF>
struct LinePass {
    double sum = 0.0;          // Re g(0) + 2 sum_{k>=1} Re g(kh), scaled
    double tail = 0.0;         // magnitude of the last few nodes, scaled
    int nodes = 0;
    bool decayed = false;
};

template <class LogF>
LinePass<LogF> line_pass(LogF&& log_f, double sigma, double h, double shift,
                         const ContourOptions& opt) {
    LinePass<LogF> out;
    auto g_log = [&](double w) -> std::complex<double> {
        const double tau = opt.sinh_scale * std::sinh(w);
        std::complex<double> lf = log_f(std::complex<double>(sigma, tau));
        return lf + std::complex<double>(std::log(opt.sinh_scale * std::cosh(w)), 0.0);
    };
    // center node
    {
        std::complex<double> lg = g_log(0.0);
        out.sum += std::exp(lg.real() - shift) * std::cos(lg.imag());
        ++out.nodes;
    }
    const double cutoff = shift + std::log(opt.tolerance) - 6.0;  // ~tol*1e-3 of peak
    int below = 0;
    for (int k = 1; k <= opt.max_nodes_per_side; ++k) {
        const std::complex<double> lg = g_log(k * h);
        const double mag = lg.real();
        if (std::isfinite(mag)) {
            out.sum += 2.0 * std::exp(mag - shift) * std::cos(lg.imag());
        }
        ++out.nodes;
        if (!std::isfinite(mag) || mag < cutoff) {
            if (++below >= 3) {
                out.decayed = true;
                out.tail = std::isfinite(mag) ? std::exp(mag - shift) : 0.0;
                break;
            }
        } else {
            below = 0;
        }
    }
    return out;
}

}  // namespace detail

// log_f(s) must return the complex logarithm of the integrand at s on the
// line Re s = sigma (non-finite real part means "negligibly small / zero").
template <class LogF>
LineIntegral integrate_contour(LogF&& log_f, double sigma, const ContourOptions& opt = {}) {
    // Peak scan along the line to pick the rescaling shift.
    double shift = -std::numeric_limits<double>::infinity();
    {
        const double hs = opt.step0;
        int below = 0;
        for (int k = 0; k <= opt.max_nodes_per_side; ++k) {
            const double tau = opt.sinh_scale * std::sinh(k * hs);
            std::complex<double> lf = log_f(std::complex<double>(sigma, tau));
            const double mag = lf.real() + std::log(opt.sinh_scale * std::cosh(k * hs));
            if (std::isfinite(mag) && mag > shift) shift = mag;
            if (!std::isfinite(mag) || (std::isfinite(shift) && mag < shift - 60.0)) {
                if (++below >= 3) break;
            } else {
                below = 0;
            }
            if (k == opt.max_nodes_per_side)
                throw ConvergenceError("integrate_contour: integrand did not decay along the line");
        }
        if (!std::isfinite(shift))
            throw ConvergenceError("integrate_contour: integrand vanished along the whole line");
    }

    const double two_pi = 2.0 * 3.14159265358979323846264338327950288;
    double h = opt.step0;
    auto pass = detail::line_pass(log_f, sigma, h, shift, opt);
    long evals = pass.nodes;
    if (!pass.decayed)
        throw ConvergenceError("integrate_contour: truncation bound not reached (non-decaying tail)");
    double prev = pass.sum * h;
    double err = std::numeric_limits<double>::infinity();
    double cur = prev;
    double tail = pass.tail * h;
    for (int r = 0; r < opt.max_refinements; ++r) {
        h *= 0.5;
        auto p = detail::line_pass(log_f, sigma, h, shift, opt);
        evals += p.nodes;
        if (!p.decayed)
            throw ConvergenceError("integrate_contour: truncation bound not reached (non-decaying tail)");
        cur = p.sum * h;
        tail = p.tail * h;
        err = std::abs(cur - prev);
        prev = cur;
        const double scale = std::max(1.0, std::abs(cur));
        if (err + tail < opt.tolerance * scale * 0.1) break;
    }

    LineIntegral out;
    const double log_abs = shift + std::log(std::max(std::abs(cur), 1e-300)) - std::log(two_pi);
    if (log_abs > 700.0)
        throw ConvergenceError("integrate_contour: result magnitude overflows double");
    out.value = std::exp(shift) * cur / two_pi;
    out.error = std::exp(shift) * (err + tail) / two_pi;
    out.log_peak = shift;
    out.evaluations = evals;
    const double tol_eff = opt.tolerance * std::max(1.0, std::abs(out.value));
    if (out.error > tol_eff)
        throw ConvergenceError("integrate_contour: error estimate above tolerance after refinement");
    return out;
}

}  // namespace hfade
