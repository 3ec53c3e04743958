#pragma once

// Parameter sweeps and the exact-vs-oracle-vs-MC validation harness behind
// the command-line front end. Output is CSV with a fixed column set and a
// deterministic float format, so identical configurations produce
// byte-identical files.

#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hfade/errors.hpp"
#include "hfade/fading.hpp"
#include "hfade/mc.hpp"
#include "hfade/metrics.hpp"

namespace hfade {

enum class SweepMetric { er, missed_adp, cauc, truncation };

struct SweepSpec {
    SweepMetric metric = SweepMetric::er;
    double snr_db_start = 0.0;
    double snr_db_stop = 30.0;
    double snr_db_step = 2.5;
    FadingParams channel;  // gamma_bar replaced per sweep point
    double A = 0.75;
    ErHVariant er_variant = ErHVariant::derived;
    int u = 2;
    double pf = -1.0;      // exactly one of pf / lambda
    double lambda = -1.0;
    int n_terms = -1;      // exactly one of n_terms / tolerance
    double tolerance = -1.0;
    std::size_t mc_samples = 0;  // 0 = skip MC columns
    std::uint64_t seed = 1;
    std::string out_path;  // empty = don't write a file

    void validate() const {
        channel.validate();
        if (!(snr_db_start < snr_db_stop) || !(snr_db_step > 0.0))
            throw DomainError("SweepSpec: require start < stop and step > 0");
        if (metric == SweepMetric::missed_adp) {
            if ((pf > 0.0) == (lambda > 0.0))
                throw DomainError("SweepSpec: exactly one of pf / lambda must be given");
            if (pf > 0.0 && pf >= 1.0) throw DomainError("SweepSpec: pf must be in (0,1)");
        }
        if ((n_terms >= 0) == (tolerance > 0.0))
            throw DomainError("SweepSpec: exactly one of n_terms / tolerance must be given");
    }
};

namespace detail {

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::vector<double> snr_grid(const SweepSpec& s) {
    std::vector<double> g;
    for (double db = s.snr_db_start; db <= s.snr_db_stop + 1e-9; db += s.snr_db_step)
        g.push_back(db);
    return g;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

struct SweepRow {
    double snr_db = 0.0;
    double exact = std::nan("");
    double exact_err = std::nan("");
    double asym = std::nan("");
    double oracle = std::nan("");
    double mc_mean = std::nan("");
    double mc_se = std::nan("");
    int n_terms = 0;
    double epsilon = std::nan("");
};

inline SweepRow sweep_point(const SweepSpec& s, double db, int n_terms, double epsilon,
                            double lambda_eff) {
    SweepRow row;
    row.snr_db = db;
    row.n_terms = n_terms;
    row.epsilon = epsilon;
    FadingParams fp = s.channel;
    fp.gamma_bar = db_to_linear(db);
    switch (s.metric) {
        case SweepMetric::er: {
            ErConfig er{s.A, s.er_variant};
            const MetricResult ex = effective_rate_exact(fp, er, n_terms);
            row.exact = ex.value;
            row.exact_err = ex.error_estimate;
            row.oracle = er_quadrature_oracle(fp, er, n_terms).value;
            try {
                row.asym = effective_rate_asymptotic(fp, er, n_terms).value;
            } catch (const DomainError&) {
                // beta divergence: asymptotic undefined for this channel
            }
            if (s.mc_samples > 0) {
                const McEstimate mc = mc_effective_rate(fp, er, s.seed, s.mc_samples);
                row.mc_mean = mc.mean;
                row.mc_se = mc.std_error;
            }
            break;
        }
        case SweepMetric::missed_adp: {
            EdConfig ed{s.u, lambda_eff};
            const MetricResult ex = adp_exact(fp, ed, n_terms);
            row.exact = 1.0 - ex.value;
            row.exact_err = ex.error_estimate;
            row.oracle = 1.0 - adp_quadrature_oracle(fp, ed, n_terms).value;
            row.asym = 1.0 - adp_asymptotic(fp, ed, n_terms).value;
            if (s.mc_samples > 0) {
                const McEstimate mc = mc_adp(fp, ed, s.seed, s.mc_samples);
                row.mc_mean = 1.0 - mc.mean;
                row.mc_se = mc.std_error;
            }
            break;
        }
        case SweepMetric::cauc: {
            const MetricResult ex = avg_auc_exact(fp, s.u, n_terms);
            row.exact = 1.0 - ex.value;
            row.exact_err = ex.error_estimate;
            row.oracle = 1.0 - auc_quadrature_oracle(fp, s.u, n_terms).value;
            row.asym = 1.0 - avg_auc_asymptotic(fp, s.u, n_terms).value;
            if (s.mc_samples > 0) {
                const McEstimate mc = mc_avg_auc(fp, s.u, s.seed, s.mc_samples);
                row.mc_mean = 1.0 - mc.mean;
                row.mc_se = mc.std_error;
            }
            break;
        }
        case SweepMetric::truncation: {
            row.exact = epsilon;
            row.exact_err = 0.0;
            break;
        }
    }
    return row;
}

}  // namespace detail

inline std::string run_sweep_csv(const SweepSpec& spec) {
    spec.validate();
    const std::vector<double> grid = detail::snr_grid(spec);
    if (grid.empty()) throw DomainError("run_sweep_csv: empty SNR grid");

    // Term count and truncation deficit are SNR-independent.
    int n_terms;
    double epsilon;
    if (spec.n_terms >= 0) {
        n_terms = spec.n_terms;
        const SeriesCoefficients c = series_coefficients(spec.channel, n_terms);
        epsilon = truncation_error(spec.channel, c, n_terms);
    } else {
        const TruncationReport tr = choose_n_terms(spec.channel, spec.tolerance);
        n_terms = tr.n_terms;
        epsilon = tr.epsilon;
    }
    const double lambda_eff =
        (spec.metric == SweepMetric::missed_adp && spec.pf > 0.0)
            ? threshold_for_pf(spec.u, spec.pf)
            : spec.lambda;

    // Points are independent pure evaluations; dispatch async, emit in order.
    std::vector<std::future<detail::SweepRow>> rows;
    rows.reserve(grid.size());
    for (double db : grid)
        rows.push_back(std::async(std::launch::async | std::launch::deferred,
                                  [&, db] { return detail::sweep_point(spec, db, n_terms, epsilon, lambda_eff); }));

    std::ostringstream os;
    os << "snr_db,exact,exact_error_est,asymptotic,oracle_quadrature,mc_mean,mc_std_error,"
          "n_terms,epsilon\n";
    for (auto& f : rows) {
        const detail::SweepRow r = f.get();
        os << detail::fmt(r.snr_db) << ',' << detail::fmt(r.exact) << ','
           << detail::fmt(r.exact_err) << ',' << detail::fmt(r.asym) << ','
           << detail::fmt(r.oracle) << ',' << detail::fmt(r.mc_mean) << ','
           << detail::fmt(r.mc_se) << ',' << r.n_terms << ',' << detail::fmt(r.epsilon) << '\n';
    }
    const std::string csv = os.str();
    if (!spec.out_path.empty()) {
        std::ofstream f(spec.out_path, std::ios::binary);
        if (!f) throw Error("run_sweep_csv: cannot open output file " + spec.out_path);
        f << csv;
    }
    return csv;
}

// Truncation-report table: one row per tested term count up to the selected N.
inline std::string truncation_table_csv(const FadingParams& fp, double tolerance,
                                        const std::string& out_path = {}) {
    const TruncationReport tr = choose_n_terms(fp, tolerance);
    const SeriesCoefficients c = series_coefficients(fp, tr.n_terms);
    std::ostringstream os;
    os << "n_terms,epsilon,tolerance\n";
    for (int N = 0; N <= tr.n_terms; ++N)
        os << N << ',' << detail::fmt(truncation_error(fp, c, N)) << ','
           << detail::fmt(tolerance) << '\n';
    const std::string csv = os.str();
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error("truncation_table_csv: cannot open output file " + out_path);
        f << csv;
    }
    return csv;
}

// ---------------------------------------------------------------------------
// validate: exact vs oracle vs MC across a channel grid
// ---------------------------------------------------------------------------

struct ValidationConfig {
    std::vector<FadingParams> channels;  // gamma_bar ignored
    double snr_db_start = 0.0;
    double snr_db_stop = 30.0;
    double snr_db_step = 5.0;
    double A = 0.75;
    ErHVariant er_variant = ErHVariant::derived;
    int u = 2;
    double pf = 0.1;
    int n_terms = 40;
    std::size_t mc_samples = 0;
    std::uint64_t seed = 1;
    double er_rel_tol = 1e-4;
    double adp_abs_tol = 1e-3;
    double auc_abs_tol = 1e-4;
    std::string out_path;
};

struct ValidationReport {
    bool pass = true;
    int n_checks = 0;
    int n_failures = 0;
    std::string csv;
};

// Flat key=value config file; '#' starts a comment. CLI flags override.
inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("parse_config_file: cannot read " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string k = trim(line.substr(0, eq));
        const std::string v = trim(line.substr(eq + 1));
        if (!k.empty()) kv[k] = v;
    }
    return kv;
}

inline ValidationConfig validation_config_from_map(const std::map<std::string, std::string>& kv) {
    ValidationConfig cfg;
    auto get = [&](const char* k) -> const std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };
    if (auto* v = get("channels")) {
        std::istringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ';')) {
            std::istringstream cs(item);
            FadingParams fp;
            char comma;
            if (cs >> fp.alpha >> comma >> fp.eta >> comma >> fp.kappa >> comma >> fp.mu) {
                fp.p = 1.0;
                fp.q = 1.0;
                cfg.channels.push_back(fp);
            }
        }
    }
    if (auto* v = get("snr_db")) {
        double a, b, c;
        char c1, c2;
        std::istringstream ss(*v);
        if (ss >> a >> c1 >> b >> c2 >> c) {
            cfg.snr_db_start = a;
            cfg.snr_db_stop = b;
            cfg.snr_db_step = c;
        }
    }
    if (auto* v = get("A")) cfg.A = std::stod(*v);
    if (auto* v = get("u")) cfg.u = std::stoi(*v);
    if (auto* v = get("pf")) cfg.pf = std::stod(*v);
    if (auto* v = get("n_terms")) cfg.n_terms = std::stoi(*v);
    if (auto* v = get("mc_samples")) cfg.mc_samples = static_cast<std::size_t>(std::stoll(*v));
    if (auto* v = get("seed")) cfg.seed = static_cast<std::uint64_t>(std::stoull(*v));
    if (auto* v = get("er_h_variant"))
        cfg.er_variant = (*v == "printed") ? ErHVariant::printed : ErHVariant::derived;
    if (auto* v = get("out")) cfg.out_path = *v;
    return cfg;
}

inline ValidationReport validate(const ValidationConfig& cfg) {
    if (cfg.channels.empty())
        throw DomainError("validate: empty channel grid");
    if (!(cfg.snr_db_start < cfg.snr_db_stop) || !(cfg.snr_db_step > 0.0))
        throw DomainError("validate: invalid SNR grid");

    ValidationReport rep;
    std::ostringstream os;
    os << "check,alpha,eta,kappa,mu,snr_db,value,reference,diff,tolerance,status\n";
    const double lambda = threshold_for_pf(cfg.u, cfg.pf);
    auto emit = [&](const char* check, const FadingParams& fp, double db, double value,
                    double reference, double diff, double tol, bool ok, const char* fail_tag) {
        ++rep.n_checks;
        if (!ok) {
            ++rep.n_failures;
            rep.pass = false;
        }
        os << check << ',' << detail::fmt(fp.alpha) << ',' << detail::fmt(fp.eta) << ','
           << detail::fmt(fp.kappa) << ',' << detail::fmt(fp.mu) << ',' << detail::fmt(db) << ','
           << detail::fmt(value) << ',' << detail::fmt(reference) << ',' << detail::fmt(diff)
           << ',' << detail::fmt(tol) << ',' << (ok ? "pass" : fail_tag) << '\n';
    };

    for (const FadingParams& ch : cfg.channels) {
        for (double db = cfg.snr_db_start; db <= cfg.snr_db_stop + 1e-9; db += cfg.snr_db_step) {
            FadingParams fp = ch;
            fp.gamma_bar = detail::db_to_linear(db);
            // effective rate, exact vs oracle (relative)
            {
                ErConfig er{cfg.A, cfg.er_variant};
                const double ex = effective_rate_exact(fp, er, cfg.n_terms).value;
                const double orc = er_quadrature_oracle(fp, er, cfg.n_terms).value;
                const double diff = std::abs(ex - orc) / std::max(std::abs(orc), 1e-12);
                emit("er_exact_vs_oracle", ch, db, ex, orc, diff, cfg.er_rel_tol,
                     diff <= cfg.er_rel_tol, "OracleMismatch");
                if (cfg.mc_samples > 0) {
                    const McEstimate mc = mc_effective_rate(fp, er, cfg.seed, cfg.mc_samples);
                    const double d = std::abs(ex - mc.mean);
                    emit("er_exact_vs_mc", ch, db, ex, mc.mean, d, 3.0 * mc.std_error,
                         d <= 3.0 * mc.std_error, "McMismatch");
                }
            }
            // missed detection, exact vs oracle (absolute)
            {
                EdConfig ed{cfg.u, lambda};
                const double ex = adp_exact(fp, ed, cfg.n_terms).value;
                const double orc = adp_quadrature_oracle(fp, ed, cfg.n_terms).value;
                const double diff = std::abs(ex - orc);
                emit("adp_exact_vs_oracle", ch, db, ex, orc, diff, cfg.adp_abs_tol,
                     diff <= cfg.adp_abs_tol, "OracleMismatch");
                if (cfg.mc_samples > 0) {
                    const McEstimate mc = mc_adp(fp, ed, cfg.seed, cfg.mc_samples);
                    const double d = std::abs(ex - mc.mean);
                    emit("adp_exact_vs_mc", ch, db, ex, mc.mean, d, 3.0 * mc.std_error,
                         d <= 3.0 * mc.std_error, "McMismatch");
                }
            }
            // average AUC, exact vs oracle (absolute)
            {
                const double ex = avg_auc_exact(fp, cfg.u, cfg.n_terms).value;
                const double orc = auc_quadrature_oracle(fp, cfg.u, cfg.n_terms).value;
                const double diff = std::abs(ex - orc);
                emit("auc_exact_vs_oracle", ch, db, ex, orc, diff, cfg.auc_abs_tol,
                     diff <= cfg.auc_abs_tol, "OracleMismatch");
                if (cfg.mc_samples > 0) {
                    const McEstimate mc = mc_avg_auc(fp, cfg.u, cfg.seed, cfg.mc_samples);
                    const double d = std::abs(ex - mc.mean);
                    emit("auc_exact_vs_mc", ch, db, ex, mc.mean, d, 3.0 * mc.std_error,
                         d <= 3.0 * mc.std_error, "McMismatch");
                }
            }
        }
    }
    rep.csv = os.str();
    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f) throw Error("validate: cannot open output file " + cfg.out_path);
        f << rep.csv;
    }
    return rep;
}

}  // namespace hfade
