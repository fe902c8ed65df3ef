#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ltls/dgp.hpp"
#include "ltls/errors.hpp"
#include "ltls/estimator.hpp"
#include "ltls/stats.hpp"

using namespace ltls;

namespace {

TrimmingScheme fixed_scheme(int l, double c) {
    TrimmingScheme s;
    s.l_n = l;
    s.cps = make_cps(l);
    s.c_n = c;
    s.l_star = l;
    s.kernel = KernelSpec::gaussian_power(0.1, 0.5);
    s.kernel_star = KernelSpec::gaussian_power(1.0, 0.5);
    return s;
}

std::vector<double> random_walk(int n, std::uint64_t seed) {
    RngStream stream(seed);
    std::vector<double> x(n);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        acc += stream.normal();
        x[k] = acc;
    }
    return x;
}

// Spreadsheet-style scalar evaluation of the estimator definition,
// independent of the library loops.
double beta_hat_oracle(const std::vector<double>& y, const std::vector<double>& fx,
                       const TrimmingScheme& s) {
    const int n = static_cast<int>(y.size());
    std::vector<double> kkn(n, 0.0), kstar(n, 0.0);
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= s.l_n; ++j) {
            const double tau = double(j) / (s.l_n + 1);
            kkn[k - 1] += eval_kernel(s.kernel, s.c_n * (double(k) / n - tau));
        }
        if (s.l_star == s.l_n) {
            for (int j = 1; j <= s.l_n; ++j) {
                const double tau = double(j) / (s.l_n + 1);
                kstar[k - 1] += eval_kernel(s.kernel_star, s.c_n * (double(k) / n - tau));
            }
        } else {
            kstar[k - 1] = eval_kernel(s.kernel_star, s.c_n * (double(k) / n - s.tau_star));
        }
    }
    double sk = 0, sfy = 0, sff = 0, sy = 0, sf = 0;
    for (int k = 0; k < n; ++k) {
        sk += kstar[k];
        sy += y[k] * kstar[k];
        sf += fx[k] * kstar[k];
    }
    const double ybar = sy / sk, fbar = sf / sk;
    for (int k = 0; k < n; ++k) {
        sfy += fx[k] * kkn[k] * (y[k] - ybar);
        sff += fx[k] * kkn[k] * (fx[k] - fbar);
    }
    return sfy / sff;
}

}  // namespace

TEST_CASE("trimmed mean") {
    std::vector<double> constant{5, 5, 5, 5};
    std::vector<double> w{0.2, 1.7, 0.01, 3.0};
    CHECK(trimmed_mean(constant, w) == doctest::Approx(5.0).epsilon(1e-14));

    std::vector<double> a{1, 2, 3};
    std::vector<double> uniform{1, 1, 1};
    CHECK(trimmed_mean(a, uniform) == doctest::Approx(2.0).epsilon(1e-15));
    std::vector<double> gate{1, 0, 1};
    CHECK(trimmed_mean(a, gate) == doctest::Approx(2.0).epsilon(1e-15));

    std::vector<double> zero{0, 0, 0};
    CHECK_THROWS_AS(trimmed_mean(a, zero), DegenerateWeights);
}

TEST_CASE("noiseless data identifies the slope exactly") {
    const int n = 40;
    const auto x = random_walk(n, 5);
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = 3.7 + 2.5 * x[k];

    RegressionInput input{y, x, fixed_scheme(3, 9.0), 0.0};
    const auto res = ltls_estimate(input);
    CHECK(res.beta_hat == doctest::Approx(2.5).epsilon(1e-10));

    // t at the true null is identically zero even though sigma2 = 0
    RegressionInput at_null = input;
    at_null.beta0 = 2.5;
    const auto tres = ltls_tstat(at_null, Studentization::standard_A);
    CHECK(tres.t_stat == 0.0);
    CHECK(tres.sigma_tilde2 == 0.0);

    // away from the null the studentization is degenerate
    CHECK_THROWS_AS(ltls_tstat(input, Studentization::standard_A), DegenerateStudentization);
}

TEST_CASE("constant kernels collapse onto the OLS slope") {
    const int n = 30;
    RngStream stream(17);
    std::vector<double> x(n), y(n);
    for (int k = 0; k < n; ++k) {
        x[k] = stream.normal();
        y[k] = 0.4 - 0.8 * x[k] + 0.3 * stream.normal();
    }
    TrimmingScheme s;
    s.l_n = 3;
    s.cps = make_cps(3);
    s.c_n = 2.0;
    s.l_star = 3;
    s.kernel = KernelSpec::constant(1.0);
    s.kernel_star = KernelSpec::constant(1.0);

    const auto res = ltls_estimate({y, x, s, 0.0});
    const auto fit = ols_fit(x, y);
    CHECK(res.beta_hat == doctest::Approx(fit.slope).epsilon(1e-12));
}

TEST_CASE("estimator matches the scalar-loop oracle") {
    // spec'd small case, n = 6
    std::vector<double> y{1, 2, 3, 4, 5, 6};
    std::vector<double> fx{1, 1, 2, 2, 3, 3};
    TrimmingScheme s;
    s.l_n = 1;
    s.cps = make_cps(1);
    s.c_n = 2.0;
    s.l_star = 1;
    s.tau_star = 0.5;
    s.kernel = KernelSpec::gaussian_power(1.0, 1.0);
    s.kernel_star = KernelSpec::gaussian_power(1.0, 1.0);
    const auto res = ltls_estimate({y, fx, s, 0.0});
    CHECK(res.beta_hat == doctest::Approx(beta_hat_oracle(y, fx, s)).epsilon(1e-10));

    // and on a larger random design with multi-cp demeaning
    const int n = 60;
    const auto x = random_walk(n, 21);
    RngStream stream(22);
    std::vector<double> yr(n);
    for (int k = 0; k < n; ++k) yr[k] = 0.2 + 0.05 * x[k] + stream.normal();
    const auto sch = fixed_scheme(4, 12.0);
    const auto r2 = ltls_estimate({yr, x, sch, 0.0});
    CHECK(r2.beta_hat == doctest::Approx(beta_hat_oracle(yr, x, sch)).epsilon(1e-10));
}

TEST_CASE("intercept invariance and scale equivariance") {
    const int n = 80;
    const auto x = random_walk(n, 31);
    RngStream stream(32);
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = 1.1 + 0.1 * x[k] + stream.normal();
    const auto s = fixed_scheme(5, 20.0);

    const auto base = ltls_tstat({y, x, s, 0.0}, Studentization::standard_A);

    std::vector<double> shifted = y;
    for (auto& v : shifted) v += 7.3;
    const auto shift_res = ltls_tstat({shifted, x, s, 0.0}, Studentization::standard_A);
    CHECK(shift_res.beta_hat == doctest::Approx(base.beta_hat).epsilon(1e-12));
    CHECK(std::abs(shift_res.t_stat - base.t_stat) < 1e-9);

    for (double a : {0.1, 10.0}) {
        std::vector<double> ya(n), xa(n);
        for (int k = 0; k < n; ++k) {
            ya[k] = a * y[k];
            xa[k] = a * x[k];
        }
        const auto yscale = ltls_tstat({ya, x, s, 0.0}, Studentization::standard_A);
        CHECK(yscale.beta_hat == doctest::Approx(a * base.beta_hat).epsilon(1e-12));
        CHECK(std::abs(yscale.t_stat - base.t_stat) < 1e-9);

        const auto xscale = ltls_estimate({y, xa, s, 0.0});
        CHECK(xscale.beta_hat == doctest::Approx(base.beta_hat / a).epsilon(1e-11));
    }
}

TEST_CASE("star variant changes only the studentization") {
    const int n = 100;
    const auto x = random_walk(n, 41);
    RngStream stream(42);
    std::vector<double> y(n);
    for (int k = 0; k < n; ++k) y[k] = 0.3 * x[k] + stream.normal();
    auto s = fixed_scheme(4, 10.0);
    s.l_star = 1;
    s.tau_star = 0.5;
    const auto std_res = ltls_tstat({y, x, s, 0.0}, Studentization::standard_A);
    const auto star_res = ltls_tstat({y, x, s, 0.0}, Studentization::star_A);
    CHECK(std_res.beta_hat == star_res.beta_hat);
    CHECK(std_res.c_stat == star_res.c_stat);
    CHECK(std_res.a_row[1] != star_res.a_row[1]);
    CHECK(std_res.t_stat != star_res.t_stat);
}

TEST_CASE("preliminary OLS statistics") {
    // degenerate: exact linear relation and AR(1)-perfect regressor
    const int n = 60;
    std::vector<double> x(n), y(n);
    for (int k = 0; k < n; ++k) {
        x[k] = 1.0 + 0.5 * k;
        y[k] = 2.0 * x[k];
    }
    const auto degen = preliminary_ols(y, x);
    CHECK(degen.degenerate);
    CHECK(degen.delta_tilde == 0.0);

    // shifted identity: zero residual variance flagged
    std::vector<double> ys(n);
    for (int k = 1; k < n; ++k) ys[k] = x[k - 1];
    const auto degen2 = preliminary_ols(ys, x);
    CHECK(degen2.degenerate);
    CHECK(degen2.sigma2_u == 0.0);

    // consistency on a simulated design
    DgpSpec spec;
    spec.delta = 0.5;
    spec.beta = 0.0;
    spec.n = 100000;
    spec.regressor = NearIntegrated{0.0};
    RngStream stream(55);
    const auto pair = gen_series(spec, stream);
    const auto prelim = preliminary_ols(pair.y, pair.x);
    CHECK(std::abs(prelim.delta_tilde - 0.5) < 0.02);
    CHECK(prelim.sigma2_u == doctest::Approx(1.0).epsilon(0.03));
    CHECK(std::abs(prelim.delta_tilde) <= 1.0);
}

TEST_CASE("setup resolution realizes the tuning rules") {
    PrelimStats prelim;
    prelim.sigma2_u = 1.0;
    prelim.delta_tilde = 0.0;

    const auto s1 = resolve_setup(SetupId::of(Setup::S1), 250, prelim);
    CHECK(s1.scheme.c_n == doctest::Approx(189.68937615433988).epsilon(1e-12));
    CHECK(s1.scheme.l_n == 39);
    CHECK(s1.scheme.l_star == 39);
    CHECK(s1.variant == Studentization::standard_A);
    CHECK(s1.scheme.kernel.variance == doctest::Approx(0.1));
    CHECK(s1.scheme.kernel.power == doctest::Approx(0.5));
    CHECK(s1.scheme.kernel_star.variance == doctest::Approx(1.0));

    PrelimStats strong;
    strong.sigma2_u = 1.0;
    strong.delta_tilde = -0.95;
    const auto s2 = resolve_setup(SetupId::of(Setup::S2), 250, strong);
    CHECK(s2.scheme.l_n == 20);  // floor(c^(1 - 0.45*0.95))
    CHECK(s2.scheme.c_n == doctest::Approx(189.68937615433988).epsilon(1e-12));

    const auto s3 = resolve_setup(SetupId::of(Setup::S3), 250, prelim);
    CHECK(s3.scheme.l_n == 5);  // floor(log 250)
    CHECK(s3.scheme.l_star == 1);
    CHECK(s3.scheme.tau_star == 0.5);
    CHECK(s3.scheme.c_n == doctest::Approx(std::pow(250.0, -0.1)).epsilon(1e-12));
    CHECK(s3.scheme.kernel.variance == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(s3.scheme.kernel.power == 1.0);
    CHECK(s3.scheme.kernel_star.power == 0.5);
    CHECK(s3.variant == Studentization::star_A);

    PrelimStats mid;
    mid.sigma2_u = 2.0;
    mid.delta_tilde = 0.6;
    const auto s3m = resolve_setup(SetupId::of(Setup::S3), 250, mid);
    CHECK(s3m.scheme.kernel.variance == doctest::Approx(2.0 * (0.1 + 0.9 * 0.6)).epsilon(1e-12));
    CHECK(s3m.scheme.c_n == doctest::Approx(std::pow(250.0, -0.1 + 0.15 * 0.6)).epsilon(1e-12));

    // empirical kernel override for S1/S2
    PrelimStats app;
    app.sigma2_u = 0.25;
    app.delta_tilde = 0.0;
    const auto s1e = resolve_setup(SetupId::of(Setup::S1, true), 250, app);
    CHECK(s1e.scheme.kernel.variance == doctest::Approx(0.025).epsilon(1e-12));
    CHECK(s1e.scheme.kernel_star.variance == doctest::Approx(0.25).epsilon(1e-12));

    // zero residual variance cannot scale the S3 kernel
    PrelimStats zero;
    zero.sigma2_u = 0.0;
    zero.delta_tilde = 0.0;
    CHECK_THROWS_AS(resolve_setup(SetupId::of(Setup::S3), 250, zero), EstimationError);
    CHECK_THROWS_AS(resolve_setup(SetupId::of(Setup::S1), 4, prelim), std::domain_error);
}

TEST_CASE("full setup run produces finite statistics") {
    DgpSpec spec;
    spec.delta = -0.5;
    spec.beta = 0.0;
    spec.n = 250;
    spec.regressor = NearIntegrated{-5.0};
    RngStream stream(77);
    const auto pair = gen_series(spec, stream);
    const auto frame = make_frame(pair);
    for (Setup s : {Setup::S1, Setup::S2, Setup::S3}) {
        const auto res =
            run_setup(frame.y, frame.fx, pair.x, 1, SetupId::of(s), 0.0);
        CHECK(std::isfinite(res.t_stat));
        CHECK(std::isfinite(res.beta_hat));
        CHECK(std::isfinite(res.delta_tilde));
        CHECK(res.v22 > 0.0);
        CHECK(res.v11 >= 0.0);
        CHECK(res.has_t);
    }
}
