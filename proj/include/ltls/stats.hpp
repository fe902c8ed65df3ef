#pragma once

#include <span>
#include <vector>

namespace ltls {

double normal_pdf(double x);
double normal_cdf(double x);

/// Inverse standard normal CDF. Hastings rational start refined by Halley
/// steps on Phi(z) - p; accurate to ~1 ulp over p in (1e-300, 1 - 1e-16).
double normal_quantile(double p);

double mean(std::span<const double> v);
double sample_variance(std::span<const double> v);  // divisor n

/// Bivariate OLS fit of y on (1, x).
struct OlsFit {
    double intercept = 0.0;
    double slope = 0.0;
    std::vector<double> residuals;
    double rss = 0.0;
    double sxx = 0.0;  // centered sum of squares of x
};

/// Throws SingularDesign when x has (numerically) zero variance.
OlsFit ols_fit(std::span<const double> x, std::span<const double> y);

/// One-sample Kolmogorov-Smirnov test against the standard normal.
struct KsResult {
    double statistic = 0.0;  // sup |F_n - Phi|
    double p_value = 1.0;    // asymptotic (Stephens' small-sample factor)
};
KsResult ks_test_normal(std::vector<double> sample);

}  // namespace ltls
