#pragma once

// Adaptive Gauss-Kronrod (G7,K15) quadrature on finite intervals, plus a
// semi-infinite driver with an algebraic substitution for integrable
// endpoint singularities x^{r-1} at 0. Workspaces are per-call; safe for
// concurrent use.

#include <cmath>
#include <queue>
#include <vector>

#include "hfade/errors.hpp"

namespace hfade {

namespace detail {

// Kronrod-15 abscissae (non-negative half) and weights; Gauss-7 weights on
// the shared nodes (indices 1,3,5,7 counted from the end node).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(F&& f, double a, double b, double& result, double& err, double& resabs) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    resabs = std::abs(fc) * kWgk[7];
    for (int i = 0; i < 7; ++i) {
        const double x = h * kXgk[i];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        res_k += kWgk[i] * (f1 + f2);
        resabs += kWgk[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) res_g += kWg[i / 2] * (f1 + f2);
    }
    result = res_k * h;
    resabs *= std::abs(h);
    // |K15 - G7| overestimates the K15 error for smooth integrands; add a
    // roundoff floor proportional to the absolute integral.
    err = std::abs((res_k - res_g) * h) + 1e-16 * resabs;
}

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long evaluations = 0;
};

template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, double abs_tol,
                              int max_intervals = 4000) {
    std::priority_queue<detail::Interval> heap;
    double v, e, ra;
    detail::gk15(f, a, b, v, e, ra);
    heap.push({a, b, v, e});
    double total = v, total_err = e;
    long evals = 15;
    while (total_err > abs_tol && static_cast<int>(heap.size()) < max_intervals) {
        detail::Interval top = heap.top();
        if (top.error < abs_tol / (8.0 * heap.size())) break;  // nothing left worth splitting
        heap.pop();
        const double mid = 0.5 * (top.a + top.b);
        double v1, e1, v2, e2;
        detail::gk15(f, top.a, mid, v1, e1, ra);
        detail::gk15(f, mid, top.b, v2, e2, ra);
        evals += 30;
        total += v1 + v2 - top.value;
        total_err += e1 + e2 - top.error;
        heap.push({top.a, mid, v1, e1});
        heap.push({mid, top.b, v2, e2});
    }
    if (!(total_err <= abs_tol) && !(total_err <= 1e-13 * std::abs(total)))
        throw ConvergenceError("integrate_adaptive: tolerance not reached");
    return {total, total_err, evals};
}

// Integral of f over (0, upper) where f ~ x^{power0-1} * (smooth) near 0.
// Substitutes x = y^r with r = max(1, ceil(1/power0)) so the transformed
// integrand is bounded at the origin.
template <class F>
QuadResult integrate_zero_to(F&& f, double upper, double power0, double abs_tol,
                             int max_intervals = 4000) {
    if (!(upper > 0.0)) throw DomainError("integrate_zero_to: empty interval");
    double r = 1.0;
    if (power0 < 1.0) r = std::ceil(1.0 / power0) + 1.0;
    if (r == 1.0) return integrate_adaptive(f, 0.0, upper, abs_tol, max_intervals);
    const double yb = std::pow(upper, 1.0 / r);
    auto g = [&](double y) {
        if (y <= 0.0) return 0.0;
        const double x = std::pow(y, r);
        return f(x) * r * std::pow(y, r - 1.0);
    };
    return integrate_adaptive(g, 0.0, yb, abs_tol, max_intervals);
}

// Integral of f over (0, hi) for density-like integrands whose mass sits at
// scale O(scale): log-spaced segments keep the adaptive rule from starting
// on an interval where every sample misses the peak. f ~ x^{power0-1} near 0.
template <class F>
QuadResult integrate_positive_axis(F&& f, double scale, double power0, double hi, double abs_tol) {
    static constexpr double kRel[] = {1e-4, 1e-3, 1e-2, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 1e3};
    std::vector<double> cuts;
    for (double r : kRel) {
        const double x = scale * r;
        if (x < hi) cuts.push_back(x);
    }
    for (double x = scale * 1e4; x < hi; x *= 10.0) cuts.push_back(x);
    cuts.push_back(hi);
    QuadResult total;
    const double seg_tol = abs_tol / (cuts.size() + 1);
    double lo = 0.0;
    bool first = true;
    for (double c : cuts) {
        QuadResult r = first ? integrate_zero_to(f, c, power0, seg_tol)
                             : integrate_adaptive(f, lo, c, seg_tol);
        total.value += r.value;
        total.error += r.error;
        total.evaluations += r.evaluations;
        lo = c;
        first = false;
    }
    return total;
}

// Compensated pairwise sum (deterministic reduction order).
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 64) {
        double s = 0.0, c = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = x[i] - c;
            const double t = s + y;
            c = (t - s) - y;
            s = t;
        }
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v.data(), v.size());
}

}  // namespace hfade
