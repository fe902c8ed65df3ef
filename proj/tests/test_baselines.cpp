#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ltls/baselines.hpp"
#include "ltls/errors.hpp"
#include "ltls/rng.hpp"
#include "ltls/stats.hpp"

using namespace ltls;

TEST_CASE("ols t-test matches a textbook reference") {
    RngStream stream(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 8 + int(stream.uniform01() * 32);
        std::vector<double> x(n), y(n);
        for (int k = 0; k < n; ++k) {
            x[k] = stream.normal();
            y[k] = 0.5 + 1.5 * x[k] + stream.normal();
        }
        const auto r = ols_ttest(y, x, 0.25);

        // reference: textbook formulas written out independently
        double sx = 0, sy = 0;
        for (int k = 0; k < n; ++k) {
            sx += x[k];
            sy += y[k];
        }
        const double mx = sx / n, my = sy / n;
        double sxx = 0, sxy = 0;
        for (int k = 0; k < n; ++k) {
            sxx += (x[k] - mx) * (x[k] - mx);
            sxy += (x[k] - mx) * (y[k] - my);
        }
        const double b = sxy / sxx;
        const double a = my - b * mx;
        double rss = 0;
        for (int k = 0; k < n; ++k) {
            const double e = y[k] - a - b * x[k];
            rss += e * e;
        }
        const double se = std::sqrt(rss / (n - 2) / sxx);
        CHECK(r.beta_hat == doctest::Approx(b).epsilon(1e-10));
        CHECK(r.t_stat == doctest::Approx((b - 0.25) / se).epsilon(1e-10));
    }
}

TEST_CASE("ols on an exact line is degenerate") {
    std::vector<double> x{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> y(8);
    for (int k = 0; k < 8; ++k) y[k] = 3.0 + 2.0 * x[k];
    const auto r = ols_ttest(y, x, 0.0);
    CHECK(r.beta_hat == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.degenerate);
    CHECK(std::isnan(r.t_stat));

    std::vector<double> flat(8, 1.0);
    CHECK_THROWS_AS(ols_ttest(y, flat, 0.0), SingularDesign);
}

TEST_CASE("ivx instrument recursion") {
    // rho_z = 0 when c_z = -n^b: instrument equals the first difference
    std::vector<double> x{0.3, 1.1, -0.4, 2.0, 2.5, 2.5, 1.0, 0.0,
                          1.0, 3.0, 2.0, 2.2, 2.4, 0.4, 0.5, 0.6};
    const double b = 0.5;
    const auto z0 = ivx_instrument(x, -std::pow(16.0, b), b);
    CHECK(z0[0] == x[0]);
    for (size_t k = 1; k < x.size(); ++k) CHECK(z0[k] == x[k] - x[k - 1]);

    // hand recursion, n = 4
    std::vector<double> xr{1, 1, 2, 2};
    const double rho = 1.0 - 1.0 / std::pow(4.0, 0.95);
    const auto z = ivx_instrument(xr, -1.0, 0.95);
    CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(z[1] == doctest::Approx(rho * 1.0).epsilon(1e-15));
    CHECK(z[2] == doctest::Approx(rho * rho * 1.0 + 1.0).epsilon(1e-15));
    CHECK(z[3] == doctest::Approx(rho * (rho * rho + 1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(ivx_instrument(x, 1.0, 0.95), std::domain_error);
    CHECK_THROWS_AS(ivx_instrument(x, -1.0, 1.2), std::domain_error);
}

TEST_CASE("ivx recursion equals the direct geometric sum") {
    RngStream stream(31);
    std::vector<double> x(256);
    double acc = 0;
    for (auto& v : x) {
        acc += stream.normal();
        v = acc;
    }
    const double c_z = -1.0, b = 0.95;
    const auto z = ivx_instrument(x, c_z, b);
    const double rho = 1.0 + c_z / std::pow(256.0, b);
    for (size_t k = 0; k < x.size(); ++k) {
        double direct = 0.0;
        for (size_t j = 0; j <= k; ++j) {
            const double dx = x[k - j] - (k - j == 0 ? 0.0 : x[k - j - 1]);
            direct += std::pow(rho, double(j)) * dx;
        }
        CHECK(z[k] == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("instrument approaches the regressor as b grows") {
    // deterministic ramp: closed form z_k = (1 - rho^k)/(1 - rho)
    const int n = 1000;
    std::vector<double> x(n);
    for (int k = 0; k < n; ++k) x[k] = k + 1.0;
    double prev_dev = 1e300;
    for (double b : {0.7, 0.9, 0.99}) {
        const auto z = ivx_instrument(x, -1.0, b);
        const double rho = 1.0 - 1.0 / std::pow(double(n), b);
        double dev = 0.0;
        for (int k = 0; k < n; ++k) {
            const double closed = (1.0 - std::pow(rho, k + 1.0)) / (1.0 - rho);
            CHECK(z[k] == doctest::Approx(closed).epsilon(1e-9));
            dev = std::max(dev, std::abs(z[k] - x[k]) / x[n - 1]);
        }
        CHECK(dev < prev_dev);  // deviation shrinks as b -> 1
        prev_dev = dev;
    }
}

TEST_CASE("noiseless ivx identifies the slope; intercept invariance") {
    RngStream stream(77);
    const int n = 120;
    std::vector<double> x(n), y(n);
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        acc += stream.normal();
        x[k] = acc;
        y[k] = -1.4 + 0.7 * x[k];
    }
    const auto r = ivx_ttest(y, x, 0.0);
    CHECK(r.beta_hat == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(r.degenerate);  // zero residuals: no variance estimate

    std::vector<double> yn(n);
    RngStream noise(78);
    for (int k = 0; k < n; ++k) yn[k] = y[k] + noise.normal();
    const auto r1 = ivx_ttest(yn, x, 0.0);
    std::vector<double> shifted = yn;
    for (auto& v : shifted) v += 11.0;
    const auto r2 = ivx_ttest(shifted, x, 0.0);
    CHECK(r1.beta_hat == doctest::Approx(r2.beta_hat).epsilon(1e-12));
    CHECK(r1.t_stat == doctest::Approx(r2.t_stat).epsilon(1e-10));
    CHECK(r1.nuisance.at("c_z") == -1.0);
    CHECK(r1.nuisance.at("b") == 0.95);

    // uncorrected variant differs but stays close on exogenous designs
    const auto r3 = ivx_ttest(yn, x, 0.0, -1.0, 0.95, false);
    CHECK(r3.t_stat != r1.t_stat);
    CHECK(r3.beta_hat == r1.beta_hat);
}
