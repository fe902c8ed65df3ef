#include "ltls/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltls/errors.hpp"
#include "ltls/stats.hpp"

namespace ltls {

namespace {

double centered_ss(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s;
}

}  // namespace

BaselineResult ols_ttest(std::span<const double> y, std::span<const double> x, double beta0) {
    if (y.size() != x.size() || y.size() < 4)
        throw std::domain_error("ols_ttest: need >= 4 aligned observations");
    const OlsFit fit = ols_fit(x, y);
    const auto n = static_cast<double>(y.size());

    BaselineResult res;
    res.method = BaselineResult::Method::OLS;
    res.beta_hat = fit.slope;
    const double sigma2 = fit.rss / (n - 2.0);
    if (!(fit.rss > 1e-20 * (centered_ss(y) + 1e-300))) {
        res.degenerate = true;
        res.t_stat = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.t_stat = (fit.slope - beta0) / std::sqrt(sigma2 / fit.sxx);
    return res;
}

std::vector<double> ivx_instrument(std::span<const double> x, double c_z, double b) {
    if (!(c_z < 0.0)) throw std::domain_error("ivx_instrument: c_z must be negative");
    if (!(b > 0.0 && b < 1.0)) throw std::domain_error("ivx_instrument: b must lie in (0,1)");
    const auto n = x.size();
    const double rho = 1.0 + c_z / std::pow(static_cast<double>(n), b);
    std::vector<double> z(n);
    double prev_z = 0.0, prev_x = 0.0;
    for (size_t k = 0; k < n; ++k) {
        prev_z = rho * prev_z + (x[k] - prev_x);
        prev_x = x[k];
        z[k] = prev_z;
    }
    return z;
}

BaselineResult ivx_ttest(std::span<const double> y, std::span<const double> x, double beta0,
                         double c_z, double b, bool correction) {
    if (y.size() != x.size() || y.size() < 8)
        throw std::domain_error("ivx_ttest: need >= 8 aligned observations");
    const auto n = y.size();
    const auto dn = static_cast<double>(n);

    const std::vector<double> z = ivx_instrument(x, c_z, b);

    const double my = mean(y);
    const double mx = mean(x);
    double szy = 0.0, szx = 0.0, sz = 0.0, szz = 0.0;
    for (size_t k = 0; k < n; ++k) {
        szy += z[k] * (y[k] - my);
        szx += z[k] * (x[k] - mx);
        sz += z[k];
        szz += z[k] * z[k];
    }
    if (szx == 0.0 || !std::isfinite(szx))
        throw SingularDesign("ivx_ttest: zero instrument-regressor cross moment");

    BaselineResult res;
    res.method = BaselineResult::Method::IVX;
    res.beta_hat = szy / szx;
    res.nuisance["c_z"] = c_z;
    res.nuisance["b"] = b;
    res.nuisance["correction"] = correction ? 1.0 : 0.0;

    // Residual variances for the self-normalization. Errors are treated as
    // martingale differences, so contemporaneous covariances suffice.
    const OlsFit pred = ols_fit(x, y);
    const double sigma2 = pred.rss / dn;
    if (!(pred.rss > 1e-20 * (centered_ss(y) + 1e-300))) {
        res.degenerate = true;
        res.t_stat = std::numeric_limits<double>::quiet_NaN();
        return res;
    }

    double omega_fm2 = sigma2;
    if (correction) {
        std::span<const double> xlag(x.data(), n - 1);
        std::span<const double> xcur(x.data() + 1, n - 1);
        const OlsFit ar = ols_fit(xlag, xcur);
        const auto nr = static_cast<double>(n - 1);
        double sxixi = 0.0, sxiu = 0.0;
        for (size_t k = 0; k < n - 1; ++k) {
            sxixi += ar.residuals[k] * ar.residuals[k];
            // The error of pair k is contemporaneous with the innovation that
            // produces the next regressor value, i.e. the k-th AR residual.
            sxiu += ar.residuals[k] * pred.residuals[k];
        }
        sxixi /= nr;
        sxiu /= nr;
        if (sxixi > 0.0) omega_fm2 = sigma2 - sxiu * sxiu / sxixi;
    }

    const double zbar = sz / dn;
    double var_num = sigma2 * szz;
    if (correction) var_num -= dn * zbar * zbar * omega_fm2;
    if (!(var_num > 0.0))
        throw DegenerateStudentization("ivx_ttest: nonpositive variance estimate");
    res.t_stat = (res.beta_hat - beta0) / (std::sqrt(var_num) / std::abs(szx));
    return res;
}

}  // namespace ltls
