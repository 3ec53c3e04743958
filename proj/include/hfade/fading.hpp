#pragma once

// The alpha-eta-kappa-mu fading channel in the SNR domain.
//
// The instantaneous SNR is gamma = gamma_bar * W^{2/alpha}, where W is the
// sum of the in-phase and quadrature cluster powers of the physical model:
// two independent noncentral-chi-square branches with
//   dof        nu_x = 2 mu p/(1+p),           nu_y = 2 mu/(1+p),
//   variances  s_x^2 = eta(1+p)/(p(1+eta)),   s_y^2 = (1+p)/(1+eta),
//   dominants  l_x^2 = 2 mu kappa q eta/(1+q eta), l_y^2 = 2 mu kappa/(1+q eta),
// normalized so each scattered Gaussian component has unit average variance
// (total scattered power 2 mu). That normalization makes the SNR density an
// expansion in gamma kernels exp(-gamma^{a/2} / (2 gamma_bar^{a/2})) with
// shapes mu + j:
//
//   f(g) = sum_{l=0}^inf sum_{j=0}^l  alpha (-1)^j 2^{j-mu-1} l! c_l
//          / (Gamma(mu+j) (l-j)! j! gbar^phi) * g^{phi-1} e^{-(g/gbar)^{a/2}/2},
//   phi = alpha (mu+j) / 2.
//
// The c_l are the Taylor coefficients of the branch generating function
//   C(z) = 4^mu prod_b D_b(z)^{-nu_b/2} exp(-l_b^2 (3+z)/(2 D_b(z))),
//   D_b(z) = (1+3 s_b^2) - z (1 - s_b^2),
// computed by the standard log-derivative recursion. Two identities anchor
// the whole module and are what the tests check: C(-3) = 1 (normalization)
// and the truncated-series deficit eps(N) = 1 - sum_{l<=N} (-3)^l c_l,
// which is independent of gamma_bar.

#include <cmath>
#include <cstdint>
#include <vector>

#include "hfade/errors.hpp"
#include "hfade/gamma.hpp"
#include "hfade/quadrature.hpp"

namespace hfade {

struct FadingParams {
    double alpha = 2.0;
    double eta = 1.0;
    double kappa = 1.0;
    double mu = 1.0;
    double p = 1.0;
    double q = 1.0;
    double gamma_bar = 1.0;  // linear SNR scale in the exponential kernel

    void validate() const {
        auto ok = [](double v) { return v > 0.0 && std::isfinite(v); };
        if (!ok(alpha) || !ok(eta) || !ok(kappa) || !ok(mu) || !ok(p) || !ok(q) || !ok(gamma_bar))
            throw DomainError("FadingParams: all parameters must be positive and finite");
    }

    double phi(int j) const { return alpha * (mu + j) / 2.0; }
};

// Physical branch description behind the series and the sampler.
struct BranchModel {
    double nu_x, nu_y;      // degrees of freedom
    double s2_x, s2_y;      // per-component variances
    double lam2_x, lam2_y;  // dominant powers (noncentrality * variance)
};

inline BranchModel branch_model(const FadingParams& fp) {
    fp.validate();
    BranchModel b;
    b.nu_x = 2.0 * fp.mu * fp.p / (1.0 + fp.p);
    b.nu_y = 2.0 * fp.mu / (1.0 + fp.p);
    const double px = 2.0 * fp.mu * fp.eta / (1.0 + fp.eta);
    const double py = 2.0 * fp.mu / (1.0 + fp.eta);
    b.s2_x = px / b.nu_x;
    b.s2_y = py / b.nu_y;
    const double dom = fp.kappa * 2.0 * fp.mu;
    b.lam2_x = dom * fp.q * fp.eta / (1.0 + fp.q * fp.eta);
    b.lam2_y = dom / (1.0 + fp.q * fp.eta);
    return b;
}

inline std::uint64_t fingerprint_of(const FadingParams& fp) {
    // Coefficients depend on (eta, kappa, mu, p, q) only.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](double v) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        __builtin_memcpy(&bits, &v, sizeof(bits));
        h ^= bits;
        h *= 1099511628211ull;
    };
    mix(fp.eta);
    mix(fp.kappa);
    mix(fp.mu);
    mix(fp.p);
    mix(fp.q);
    return h;
}

struct SeriesCoefficients {
    std::vector<double> values;  // c_0 .. c_N
    std::uint64_t params_fingerprint = 0;

    int n_terms() const { return static_cast<int>(values.size()) - 1; }
};

inline SeriesCoefficients series_coefficients(const FadingParams& fp, int n_terms) {
    if (n_terms < 0) throw DomainError("series_coefficients: n_terms must be >= 0");
    const BranchModel b = branch_model(fp);
    struct Br {
        double nu, s2, lam2, D0, e;
    };
    const Br branches[2] = {
        {b.nu_x, b.s2_x, b.lam2_x, 1.0 + 3.0 * b.s2_x, (1.0 - b.s2_x) / (1.0 + 3.0 * b.s2_x)},
        {b.nu_y, b.s2_y, b.lam2_y, 1.0 + 3.0 * b.s2_y, (1.0 - b.s2_y) / (1.0 + 3.0 * b.s2_y)},
    };
    SeriesCoefficients out;
    out.params_fingerprint = fingerprint_of(fp);
    out.values.resize(n_terms + 1);
    double log_c0 = fp.mu * std::log(4.0);
    for (const auto& br : branches)
        log_c0 += -(br.nu / 2.0) * std::log(br.D0) - 1.5 * br.lam2 / br.D0;
    out.values[0] = std::exp(log_c0);
    if (n_terms == 0) return out;

    std::vector<double> h(n_terms + 1, 0.0);
    for (int m = 1; m <= n_terms; ++m) {
        double s = 0.0;
        for (const auto& br : branches) {
            const double em1 = std::pow(br.e, m - 1);
            s += (br.nu / 2.0) * em1 * br.e - 2.0 * m * br.lam2 * em1 / (br.D0 * br.D0);
        }
        h[m] = s;
    }
    for (int l = 1; l <= n_terms; ++l) {
        double acc = 0.0;
        for (int m = 1; m <= l; ++m) acc += h[m] * out.values[l - m];
        const double cl = acc / l;
        if (!std::isfinite(cl) || std::abs(cl) > 1e300)
            throw CoefficientOverflow("series_coefficients: coefficient magnitude overflow at l=" +
                                      std::to_string(l));
        out.values[l] = cl;
    }
    return out;
}

inline void check_fingerprint(const FadingParams& fp, const SeriesCoefficients& c) {
    if (c.params_fingerprint != fingerprint_of(fp))
        throw FingerprintMismatch("series coefficients were computed for different parameters");
}

// Per-j sums of the series coefficients,
//   S_j = sum_{l>=j} alpha (-1)^j 2^{j-mu-1} l! c_l / (Gamma(mu+j) (l-j)! j!),
// shared by the PDF and every metric series. Assembled in log magnitude to
// survive the l! growth.
inline std::vector<double> series_term_sums(const FadingParams& fp, const SeriesCoefficients& c) {
    check_fingerprint(fp, c);
    const int N = c.n_terms();
    std::vector<double> s(N + 1, 0.0);
    std::vector<double> log_abs_c(N + 1);
    for (int l = 0; l <= N; ++l)
        log_abs_c[l] = (c.values[l] == 0.0) ? -std::numeric_limits<double>::infinity()
                                            : std::log(std::abs(c.values[l]));
    const double log_alpha = std::log(fp.alpha);
    for (int j = 0; j <= N; ++j) {
        const double base = log_alpha + (j - fp.mu - 1.0) * std::log(2.0) -
                            std::lgamma(fp.mu + j) - std::lgamma(j + 1.0);
        double acc = 0.0;
        for (int l = j; l <= N; ++l) {
            if (!std::isfinite(log_abs_c[l])) continue;
            const double lt = base + log_abs_c[l] + std::lgamma(l + 1.0) - std::lgamma(l - j + 1.0);
            const double sign = ((j % 2) ? -1.0 : 1.0) * (c.values[l] > 0 ? 1.0 : -1.0);
            acc += sign * std::exp(lt);
        }
        s[j] = acc;
    }
    return s;
}

// Truncated SNR density, Eq-(1)-shaped double sum with the exponential
// kernel evaluated exactly.
inline double pdf_truncated(const FadingParams& fp, const SeriesCoefficients& c, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("pdf_truncated: gamma must be positive");
    const std::vector<double> s = series_term_sums(fp, c);
    const double w = std::pow(gamma / fp.gamma_bar, fp.alpha / 2.0);
    const double ker = std::exp(-0.5 * w);
    double f = 0.0;
    for (int j = 0; j <= c.n_terms(); ++j) {
        const double phi = fp.phi(j);
        f += s[j] * std::exp((phi - 1.0) * std::log(gamma) - phi * std::log(fp.gamma_bar)) * ker;
    }
    return f;
}

// Same series with the kernel replaced by its argument->0 limit (1).
inline double pdf_asymptotic(const FadingParams& fp, const SeriesCoefficients& c, double gamma) {
    if (!(gamma > 0.0)) throw DomainError("pdf_asymptotic: gamma must be positive");
    const std::vector<double> s = series_term_sums(fp, c);
    double f = 0.0;
    for (int j = 0; j <= c.n_terms(); ++j) {
        const double phi = fp.phi(j);
        f += s[j] * std::exp((phi - 1.0) * std::log(gamma) - phi * std::log(fp.gamma_bar));
    }
    return f;
}

// Reusable evaluator for the hot paths (CDF over 1e6 sample points, the
// quadrature oracles). Precomputes the per-j sums once.
class PdfEvaluator {
  public:
    PdfEvaluator(const FadingParams& fp, const SeriesCoefficients& c)
        : fp_(fp), sums_(series_term_sums(fp, c)), n_(c.n_terms()) {
        // CDF form: F(g) = sum_{l,j} c_l C(l,j) (-4)^j P(mu+j, w/2); grouped by j.
        cdf_sums_.assign(n_ + 1, 0.0);
        cdf_abs_ = 0.0;
        for (int j = 0; j <= n_; ++j) {
            double acc = 0.0, accabs = 0.0;
            for (int l = j; l <= n_; ++l) {
                const double lb = std::lgamma(l + 1.0) - std::lgamma(j + 1.0) -
                                  std::lgamma(l - j + 1.0) + j * std::log(4.0);
                const double t = c.values[l] * ((j % 2) ? -1.0 : 1.0) * std::exp(lb);
                acc += t;
                accabs += std::abs(t);
            }
            cdf_sums_[j] = acc;
            cdf_abs_ += accabs;
        }
    }

    const FadingParams& params() const { return fp_; }
    int n_terms() const { return n_; }

    double pdf(double gamma) const {
        const double w = std::pow(gamma / fp_.gamma_bar, fp_.alpha / 2.0);
        const double ker = std::exp(-0.5 * w);
        double f = 0.0;
        const double lg = std::log(gamma), lgb = std::log(fp_.gamma_bar);
        for (int j = 0; j <= n_; ++j) {
            const double phi = fp_.phi(j);
            f += sums_[j] * std::exp((phi - 1.0) * lg - phi * lgb);
        }
        return f * ker;
    }

    // Closed-form CDF of the truncated series (termwise Mellin transform of
    // each kernel term). Well-conditioned when the alternating j-sum does
    // not blow up; cdf_cancellation() reports the bound.
    double cdf(double gamma) const {
        if (gamma <= 0.0) return 0.0;
        const double x = 0.5 * std::pow(gamma / fp_.gamma_bar, fp_.alpha / 2.0);
        double F = 0.0;
        for (int j = 0; j <= n_; ++j)
            F += cdf_sums_[j] * lower_gamma_regularized(fp_.mu + j, x);
        return F;
    }

    double cdf_cancellation() const { return cdf_abs_; }

  private:
    FadingParams fp_;
    std::vector<double> sums_;
    std::vector<double> cdf_sums_;
    double cdf_abs_;
    int n_;
};

// gamma_bar-free closed form of the truncation deficit.
inline double truncation_error(const FadingParams& fp, const SeriesCoefficients& c, int n_terms) {
    check_fingerprint(fp, c);
    if (n_terms < 0 || n_terms > c.n_terms())
        throw DomainError("truncation_error: n_terms out of range of the coefficient list");
    double s = 0.0, comp = 0.0, pw = 1.0;
    for (int l = 0; l <= n_terms; ++l) {
        const double y = c.values[l] * pw - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
        pw *= -3.0;
    }
    return 1.0 - s;
}

enum class TruncationMethod { closed_form, quadrature };

struct TruncationReport {
    int n_terms = 0;
    double epsilon = 0.0;
    double tolerance = 0.0;
    TruncationMethod method = TruncationMethod::closed_form;
};

inline TruncationReport choose_n_terms(const FadingParams& fp, double tolerance, int n_max = 200) {
    if (!(tolerance > 0.0)) throw DomainError("choose_n_terms: tolerance must be positive");
    const SeriesCoefficients c = series_coefficients(fp, n_max);
    double s = 0.0, comp = 0.0, pw = 1.0;
    for (int N = 0; N <= n_max; ++N) {
        const double y = c.values[N] * pw - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
        pw *= -3.0;
        const double eps = 1.0 - s;
        if (std::abs(eps) <= tolerance)
            return {N, eps, tolerance, TruncationMethod::closed_form};
    }
    throw NotConverged("choose_n_terms: tolerance not met by n_max=" + std::to_string(n_max));
}

// Quadrature cross-check of the truncation deficit (the arbiter for the
// closed form): eps = 1 - int_0^inf pdf_truncated.
inline double truncation_error_quadrature(const FadingParams& fp, const SeriesCoefficients& c,
                                          double abs_tol = 1e-11) {
    PdfEvaluator ev(fp, c);
    const double phi0 = fp.phi(0);
    // Kernel cutoff: exp(-w/2) below ~1e-60 once w > 280.
    const double hi = fp.gamma_bar * std::pow(560.0, 2.0 / fp.alpha);
    auto q = integrate_positive_axis([&](double g) { return ev.pdf(g); }, fp.gamma_bar, phi0, hi,
                                     abs_tol);
    return 1.0 - q.value;
}

}  // namespace hfade
