#include "ltls/memory.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "ltls/errors.hpp"
#include "ltls/fft.hpp"
#include "ltls/stats.hpp"

namespace ltls {

namespace {

std::size_t n_ordinates(std::size_t n) { return (n - 1) / 2; }

std::vector<double> diff_coeffs(double d, std::size_t m) {
    std::vector<double> pi(m + 1);
    pi[0] = 1.0;
    for (std::size_t j = 1; j <= m; ++j)
        pi[j] = pi[j - 1] * (static_cast<double>(j) - 1.0 - d) / static_cast<double>(j);
    return pi;
}

int bandwidth_for(std::size_t n, double b) {
    if (n < 64) throw BandwidthError("memory estimate: need n >= 64");
    if (!(b > 0.0 && b < 1.0)) throw BandwidthError("memory estimate: b must lie in (0,1)");
    const int m = static_cast<int>(std::floor(std::pow(static_cast<double>(n), b)));
    if (m < 4) throw BandwidthError("memory estimate: bandwidth m < 4");
    if (static_cast<std::size_t>(m) > n_ordinates(n))
        throw BandwidthError("memory estimate: bandwidth exceeds available ordinates");
    return m;
}

/// Coarse grid (step 1/300) then golden-section refinement between the
/// neighbors of the grid argmin.
std::pair<double, double> grid_golden_min(const std::function<double(double)>& f, double lo,
                                          double hi) {
    const double step = 1.0 / 300.0;
    const int npts = static_cast<int>(std::round((hi - lo) / step)) + 1;
    int best = 0;
    double fbest = f(lo);
    for (int i = 1; i < npts; ++i) {
        const double v = f(lo + i * step);
        if (v < fbest) {
            fbest = v;
            best = i;
        }
    }
    double a = lo + std::max(0, best - 1) * step;
    double b = lo + std::min(npts - 1, best + 1) * step;

    const double gr = 0.6180339887498949;  // golden ratio conjugate
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > 1e-6) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        }
    }
    const double xopt = 0.5 * (a + b);
    return {xopt, f(xopt)};
}

}  // namespace

std::vector<double> periodogram(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) throw std::domain_error("periodogram: need n >= 4");
    const auto spec = fft::real_dft(x);
    const std::size_t nj = n_ordinates(n);
    std::vector<double> out(nj);
    const double scale = 1.0 / (2.0 * M_PI * static_cast<double>(n));
    for (std::size_t j = 1; j <= nj; ++j) out[j - 1] = std::norm(spec[j]) * scale;
    return out;
}

std::vector<double> periodogram_reference(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 4) throw std::domain_error("periodogram: need n >= 4");
    const std::size_t nj = n_ordinates(n);
    std::vector<double> out(nj);
    for (std::size_t j = 1; j <= nj; ++j) {
        const double lam = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        double re = 0.0, im = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            re += x[k - 1] * std::cos(lam * static_cast<double>(k));
            im -= x[k - 1] * std::sin(lam * static_cast<double>(k));
        }
        out[j - 1] = (re * re + im * im) / (2.0 * M_PI * static_cast<double>(n));
    }
    return out;
}

std::vector<double> frac_diff_reference(std::span<const double> x, double d) {
    const std::size_t n = x.size();
    const auto pi = diff_coeffs(d, n == 0 ? 0 : n - 1);
    std::vector<double> y(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t j = 0; j <= k; ++j) s += pi[j] * x[k - j];
        y[k] = s;
    }
    return y;
}

std::vector<double> frac_diff(std::span<const double> x, double d) {
    const std::size_t n = x.size();
    if (n <= 512) return frac_diff_reference(x, d);
    const auto pi = diff_coeffs(d, n - 1);
    return fft::convolve(pi, x, n);
}

double lw_objective(std::span<const double> periodogram_vals, std::size_t n, int m, double d) {
    double s = 0.0, slog = 0.0;
    for (int j = 1; j <= m; ++j) {
        const double lam = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        s += std::pow(lam, 2.0 * d) * periodogram_vals[static_cast<std::size_t>(j - 1)];
        slog += std::log(lam);
    }
    if (!(s > 0.0)) throw EstimationError("lw_objective: zero periodogram mass");
    const double dm = static_cast<double>(m);
    return std::log(s / dm) - 2.0 * d * slog / dm;
}

double elw_objective(std::span<const double> x, int m, double d) {
    std::vector<double> shifted(x.begin(), x.end());
    const double x0 = shifted.empty() ? 0.0 : shifted[0];
    for (double& v : shifted) v -= x0;
    const auto dx = frac_diff(shifted, d);
    const auto ig = periodogram(dx);
    double s = 0.0, slog = 0.0;
    const std::size_t n = x.size();
    for (int j = 1; j <= m; ++j) {
        const double lam = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
        s += ig[static_cast<std::size_t>(j - 1)];
        slog += std::log(lam);
    }
    if (!(s > 0.0)) throw EstimationError("elw_objective: zero periodogram mass");
    const double dm = static_cast<double>(m);
    return std::log(s / dm) - 2.0 * d * slog / dm;
}

MemoryEstimate lw_estimate(std::span<const double> x, double b) {
    const int m = bandwidth_for(x.size(), b);
    std::vector<double> centered(x.begin(), x.end());
    const double mu = mean(centered);
    for (double& v : centered) v -= mu;
    const auto ig = periodogram(centered);
    const auto [dopt, fopt] = grid_golden_min(
        [&](double d) { return lw_objective(ig, x.size(), m, d); }, -0.5, 1.5);
    return {dopt, MemoryEstimate::Method::LW, m, b, fopt};
}

MemoryEstimate elw_estimate(std::span<const double> x, double b) {
    const int m = bandwidth_for(x.size(), b);
    std::vector<double> series(x.begin(), x.end());
    const auto [dopt, fopt] = grid_golden_min(
        [&](double d) { return elw_objective(series, m, d); }, -0.5, 2.0);
    return {dopt, MemoryEstimate::Method::ELW, m, b, fopt};
}

}  // namespace ltls
