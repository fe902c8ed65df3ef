#include "ltls/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ltls/errors.hpp"

namespace ltls {

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 0.3989422804014326779;
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * 0.7071067811865475244);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0,1)");

    // Hastings approximation (abs error < 4.5e-4) as the starting point.
    const double q = std::min(p, 1.0 - p);
    const double t = std::sqrt(-2.0 * std::log(q));
    double z = t - (2.515517 + t * (0.802853 + t * 0.010328)) /
                       (1.0 + t * (1.432788 + t * (0.189269 + t * 0.001308)));
    if (p < 0.5) z = -z;

    // Halley refinement; two passes bring the start below 1 ulp.
    for (int i = 0; i < 3; ++i) {
        const double e = normal_cdf(z) - p;
        const double u = e / normal_pdf(z);
        z -= u / (1.0 + 0.5 * z * u);
    }
    return z;
}

double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(std::span<const double> v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

OlsFit ols_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("ols_fit: need two equal-length series, n >= 2");
    const auto n = static_cast<double>(x.size());
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, sxy = 0.0, msq = 0.0;
    for (size_t k = 0; k < x.size(); ++k) {
        const double dx = x[k] - mx;
        sxx += dx * dx;
        sxy += dx * (y[k] - my);
        msq += x[k] * x[k];
    }
    if (!(sxx > 1e-20 * (1.0 + msq)))
        throw SingularDesign("ols_fit: regressor has zero sample variance");

    OlsFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.sxx = sxx;
    fit.residuals.resize(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
        fit.residuals[k] = y[k] - fit.intercept - fit.slope * x[k];
        fit.rss += fit.residuals[k] * fit.residuals[k];
    }
    (void)n;
    return fit;
}

KsResult ks_test_normal(std::vector<double> sample) {
    if (sample.size() < 8) throw std::invalid_argument("ks_test_normal: sample too small");
    std::sort(sample.begin(), sample.end());
    const auto n = static_cast<double>(sample.size());
    double d = 0.0;
    for (size_t i = 0; i < sample.size(); ++i) {
        const double f = normal_cdf(sample[i]);
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(i + 1) / n;
        d = std::max({d, f - lo, hi - f});
    }
    // Asymptotic Kolmogorov tail with Stephens' finite-sample adjustment.
    const double rn = std::sqrt(n);
    const double lambda = (rn + 0.12 + 0.11 / rn) * d;
    double p = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        p += 2.0 * sign * term;
        sign = -sign;
        if (term < 1e-12) break;
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

}  // namespace ltls
