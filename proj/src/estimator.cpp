#include "ltls/estimator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltls/errors.hpp"
#include "ltls/stats.hpp"

namespace ltls {

double trimmed_mean(std::span<const double> a, std::span<const double> w) {
    if (a.size() != w.size() || a.empty())
        throw std::invalid_argument("trimmed_mean: length mismatch");
    double sw = 0.0, saw = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        sw += w[k];
        saw += a[k] * w[k];
    }
    if (!(sw > 0.0)) throw DegenerateWeights("trimmed_mean: weights sum to zero");
    return saw / sw;
}

namespace {

struct FitCore {
    TrimmingWeights w;
    double sum_kstar = 0.0;
    double c_stat = 0.0;
    double numerator = 0.0;
    double beta_hat = 0.0;
};

FitCore fit_core(const RegressionInput& input) {
    const auto n = input.y.size();
    if (n != input.fx.size()) throw std::invalid_argument("ltls: y/fx length mismatch");
    if (n < 4) throw std::domain_error("ltls: need at least 4 observations");

    FitCore core;
    core.w = trimming_weights(input.scheme, static_cast<int>(n));
    for (double ws : core.w.kstar_kn) core.sum_kstar += ws;
    if (!(core.sum_kstar > 0.0))
        throw DegenerateWeights("ltls: demeaning weights sum to zero");

    const double fbar = trimmed_mean(input.fx, core.w.kstar_kn);
    const double ybar = trimmed_mean(input.y, core.w.kstar_kn);
    for (size_t k = 0; k < n; ++k) {
        const double z = input.fx[k] * core.w.kkn[k];
        core.c_stat += z * (input.fx[k] - fbar);
        core.numerator += z * (input.y[k] - ybar);
    }
    if (core.c_stat == 0.0 || !std::isfinite(core.c_stat))
        throw SingularDesign("ltls: trimmed design sum is zero");
    core.beta_hat = core.numerator / core.c_stat;
    return core;
}

// Relative threshold below which a residual sum of squares is considered an
// exact fit (degenerate for studentization purposes).
bool is_exact_fit(double rss, double total_ss) {
    return !(rss > 1e-20 * (total_ss + 1e-300));
}

double centered_ss(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
}

EstimationResult result_from_core(const FitCore& core, const RegressionInput& input) {
    EstimationResult res;
    res.beta_hat = core.beta_hat;
    res.c_stat = core.c_stat;
    res.numerator = core.numerator;
    res.scheme_used = input.scheme;
    res.delta_tilde = std::numeric_limits<double>::quiet_NaN();
    return res;
}

}  // namespace

EstimationResult ltls_estimate(const RegressionInput& input) {
    return result_from_core(fit_core(input), input);
}

EstimationResult ltls_tstat(const RegressionInput& input, Studentization variant) {
    const FitCore core = fit_core(input);
    EstimationResult res = result_from_core(core, input);
    res.variant = variant;

    const auto n = input.y.size();
    const TrimmingWeights& w = core.w;

    double sum_kstar = 0.0, sum_fk = 0.0, sum_fkstar = 0.0;
    double v11 = 0.0, v12 = 0.0, v22 = 0.0;
    for (size_t k = 0; k < n; ++k) {
        const double f = input.fx[k];
        const double kk = w.kkn[k];
        const double ks = w.kstar_kn[k];
        sum_kstar += ks;
        sum_fk += f * kk;
        sum_fkstar += f * ks;
        v11 += kk * kk * f * f;
        v12 += ks * kk * f;
        v22 += ks * ks;
    }

    const OlsFit ols = ols_fit(input.fx, input.y);
    double sigma2 = ols.rss / static_cast<double>(n);
    if (is_exact_fit(ols.rss, centered_ss(input.y))) sigma2 = 0.0;

    const double a2 = -(variant == Studentization::standard_A ? sum_fk : sum_fkstar) / sum_kstar;
    res.a_row[0] = 1.0;
    res.a_row[1] = a2;
    res.v11 = v11;
    res.v12 = v12;
    res.v22 = v22;
    res.sigma_tilde2 = sigma2;

    const double quad = sigma2 * (v11 + 2.0 * a2 * v12 + a2 * a2 * v22);
    const double t_num = res.c_stat * (res.beta_hat - input.beta0);
    const bool at_null = std::abs(res.beta_hat - input.beta0) <= 1e-10 * (1.0 + std::abs(input.beta0));
    if (t_num == 0.0 || (sigma2 == 0.0 && at_null)) {
        res.t_stat = 0.0;
    } else if (!(quad > 0.0)) {
        throw DegenerateStudentization("ltls_tstat: nonpositive variance quadratic form");
    } else {
        res.t_stat = t_num / std::sqrt(quad);
    }
    res.has_t = true;
    return res;
}

PrelimStats prelim_stats_frame(std::span<const double> y_pairs, std::span<const double> x_pairs,
                               std::span<const double> x_series, int horizon_m) {
    if (y_pairs.size() != x_pairs.size() || y_pairs.size() < 4)
        throw std::domain_error("prelim_stats_frame: need >= 4 aligned pairs");
    if (horizon_m < 1) throw std::domain_error("prelim_stats_frame: horizon must be >= 1");
    if (x_series.size() < 2) throw std::domain_error("prelim_stats_frame: regressor series too short");

    PrelimStats out;

    const OlsFit pred = ols_fit(x_pairs, y_pairs);
    out.residuals_u = pred.residuals;

    // AR(1) of the regressor on its own lag, x_t on x_{t-1}, t = 2..n.
    std::span<const double> xlag(x_series.data(), x_series.size() - 1);
    std::span<const double> xcur(x_series.data() + 1, x_series.size() - 1);
    const OlsFit ar = ols_fit(xlag, xcur);
    out.residuals_xi = ar.residuals;

    const auto np = static_cast<double>(out.residuals_u.size());
    out.sigma2_u = pred.rss / np;
    out.sigma2_xi = ar.rss / static_cast<double>(out.residuals_xi.size());

    // Residual of pair i carries error time i+m+1; the matching AR residual
    // (time t, stored at t-2) sits at index i+m-1.
    double suu = 0.0, sxx = 0.0, sux = 0.0;
    for (size_t i = 0; i < out.residuals_u.size(); ++i) {
        const size_t j = i + static_cast<size_t>(horizon_m) - 1;
        if (j >= out.residuals_xi.size()) break;
        const double u = out.residuals_u[i];
        const double xi = out.residuals_xi[j];
        suu += u * u;
        sxx += xi * xi;
        sux += u * xi;
    }
    if (is_exact_fit(suu, centered_ss(y_pairs)) || is_exact_fit(sxx, centered_ss(xcur))) {
        out.degenerate = true;
        out.delta_tilde = 0.0;
        if (is_exact_fit(pred.rss, centered_ss(y_pairs))) out.sigma2_u = 0.0;
    } else {
        out.delta_tilde = sux / std::sqrt(suu * sxx);
    }
    return out;
}

PrelimStats preliminary_ols(const std::vector<double>& y_series,
                            const std::vector<double>& x_series) {
    if (y_series.size() != x_series.size() || y_series.size() < 5)
        throw std::domain_error("preliminary_ols: need aligned series, n >= 5");
    const size_t n = y_series.size();
    std::span<const double> y_pairs(y_series.data() + 1, n - 1);
    std::span<const double> x_pairs(x_series.data(), n - 1);
    return prelim_stats_frame(y_pairs, x_pairs, x_series, 1);
}

SetupId SetupId::of(Setup s, bool empirical) {
    SetupId id;
    switch (s) {
        case Setup::S1: id.kind = Kind::S1; break;
        case Setup::S2: id.kind = Kind::S2; break;
        case Setup::S3: id.kind = Kind::S3; break;
    }
    id.empirical_kernels = empirical;
    return id;
}

ResolvedSetup resolve_setup(const SetupId& id, int n, const PrelimStats& prelim) {
    if (n < 8) throw std::domain_error("resolve_setup: n must be >= 8");
    if (id.kind == SetupId::Kind::Custom) return {id.custom_scheme, id.custom_variant};

    const double adelta = std::abs(prelim.delta_tilde);
    ResolvedSetup out;
    TrimmingScheme& sch = out.scheme;

    if (id.kind == SetupId::Kind::S1 || id.kind == SetupId::Kind::S2) {
        sch.c_n = std::pow(static_cast<double>(n), 0.95);
        const double alpha = id.kind == SetupId::Kind::S1 ? 0.7 : 1.0 - 0.45 * adelta;
        sch.l_n = std::max(1, static_cast<int>(std::floor(std::pow(sch.c_n, alpha))));
        sch.l_star = sch.l_n;
        double kv = 0.1, ksv = 1.0;
        if (id.empirical_kernels) {
            if (!(prelim.sigma2_u > 0.0))
                throw EstimationError("resolve_setup: zero residual variance, no kernel scale");
            kv = 0.1 * prelim.sigma2_u;
            ksv = prelim.sigma2_u;
        }
        sch.kernel = KernelSpec::gaussian_power(kv, 0.5);
        sch.kernel_star = KernelSpec::gaussian_power(ksv, 0.5);
        out.variant = Studentization::standard_A;
    } else {
        const double s2 = prelim.sigma2_u * (0.1 + 0.9 * adelta);
        if (!(s2 > 0.0))
            throw EstimationError("resolve_setup: zero residual variance, no kernel scale");
        sch.c_n = std::pow(static_cast<double>(n), -0.1 + 0.15 * adelta);
        sch.l_n = std::max(1, static_cast<int>(std::floor(std::log(static_cast<double>(n)))));
        sch.l_star = 1;
        sch.tau_star = 0.5;
        sch.kernel = KernelSpec::gaussian_power(s2, 1.0);
        sch.kernel_star = KernelSpec::gaussian_power(s2, 0.5);
        out.variant = Studentization::star_A;
    }
    sch.cps = make_cps(sch.l_n);
    return out;
}

EstimationResult run_setup(std::span<const double> y_pairs, std::span<const double> x_pairs,
                           std::span<const double> x_series, int horizon_m, const SetupId& id,
                           double beta0) {
    const PrelimStats prelim = prelim_stats_frame(y_pairs, x_pairs, x_series, horizon_m);
    const ResolvedSetup rs = resolve_setup(id, static_cast<int>(y_pairs.size()), prelim);
    RegressionInput input;
    input.y.assign(y_pairs.begin(), y_pairs.end());
    input.fx.assign(x_pairs.begin(), x_pairs.end());
    input.scheme = rs.scheme;
    input.beta0 = beta0;
    EstimationResult res = ltls_tstat(input, rs.variant);
    res.delta_tilde = prelim.delta_tilde;
    return res;
}

}  // namespace ltls
