#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace ltls {

struct BaselineResult {
    enum class Method { OLS, IVX };
    Method method = Method::OLS;
    double beta_hat = 0.0;
    double t_stat = 0.0;
    bool degenerate = false;  // zero residual variance; t_stat is NaN
    std::map<std::string, double> nuisance;
};

/// Conventional intercept-included OLS slope t-test with
/// sigma2 = RSS / (n - 2).
BaselineResult ols_ttest(std::span<const double> y, std::span<const double> x, double beta0);

/// Mildly integrated instrument z_k = rho z_{k-1} + (x_k - x_{k-1}),
/// rho = 1 + c_z / n^b, z_0 = 0, x_0 = 0.
std::vector<double> ivx_instrument(std::span<const double> x, double c_z, double b);

/// Self-normalized IVX slope test: demeaned y and x against the raw
/// instrument, variance sigma2 * sum(z^2) minus the intercept-correction term
/// n zbar^2 * omega_fm2 (omega_fm2 = residual variance net of its projection
/// on the regressor innovations). correction=false drops that term.
BaselineResult ivx_ttest(std::span<const double> y, std::span<const double> x, double beta0,
                         double c_z = -1.0, double b = 0.95, bool correction = true);

}  // namespace ltls
