#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "ltls/errors.hpp"
#include "ltls/montecarlo.hpp"
#include "ltls/stats.hpp"

using namespace ltls;

namespace {

McCampaign small_campaign() {
    McCampaign c;
    c.dgp_grid = {DgpSpec{-0.5, NearIntegrated{0.0}, 0.0, 0.0, 64}};
    c.methods = {McMethod::T3, McMethod::OLS};
    c.reps = 200;
    c.master_seed = 11;
    return c;
}

bool cells_equal(const std::vector<McCell>& a, const std::vector<McCell>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].rejection_rate != b[i].rejection_rate) return false;
        if (a[i].mc_se != b[i].mc_se) return false;
        if (a[i].failures != b[i].failures) return false;
        if (a[i].method != b[i].method) return false;
        if (a[i].beta != b[i].beta) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("campaign is reproducible across runs and thread counts") {
    const auto c = small_campaign();
    const auto run1 = run_campaign(c, 4);
    const auto run2 = run_campaign(c, 4);
    const auto run3 = run_campaign(c, 1);
    const auto serial = run_campaign_serial(c);
    CHECK(cells_equal(run1, run2));
    CHECK(cells_equal(run1, run3));
    CHECK(cells_equal(run1, serial));
    CHECK(summarize_csv(run1) == summarize_csv(serial));

    McCampaign other = c;
    other.master_seed = 12;
    CHECK(!cells_equal(run1, run_campaign(other, 4)));
}

TEST_CASE("replication streams are pairwise distinct") {
    std::set<std::uint64_t> seen;
    int count = 0;
    for (int cell = 0; cell < 10; ++cell) {
        DgpSpec dgp{-0.5 + 0.1 * cell, NearIntegrated{-double(cell)}, 0.0, 0.0, 100};
        const auto key = dgp_cell_key(dgp);
        for (int rep = 0; rep < 1000; ++rep) {
            RngStream stream(derive_seed(123, key, rep));
            seen.insert(stream.raw());
            ++count;
        }
    }
    CHECK(int(seen.size()) == count);
}

TEST_CASE("summarize emits one ordered row per cell") {
    const auto cells = run_campaign(small_campaign(), 0);
    REQUIRE(cells.size() == 2);
    const auto csv = summarize_csv(cells);
    CHECK(csv.find("ni,0,-0.5,64,0,T3,200,") == 0);
    CHECK(csv.find("\nni,0,-0.5,64,0,OLS,200,") != std::string::npos);
    // single cell -> single row
    const auto one = summarize_csv({cells[0]});
    CHECK(std::count(one.begin(), one.end(), '\n') == 1);
}

TEST_CASE("full NI grid cardinality matches the published layout") {
    McCampaign c;
    for (double cc : {0.0, -5.0, -10.0, -20.0, -50.0})
        for (double delta : {-0.95, -0.5, 0.0, 0.5, 0.95})
            for (int n : {40, 64, 80, 100})
                c.dgp_grid.push_back(DgpSpec{delta, NearIntegrated{cc}, 0.0, 0.0, n});
    c.reps = 100;
    c.master_seed = 5;
    const auto cells = run_campaign(c, 0);
    CHECK(cells.size() == 500);  // 5 c x 5 delta x 4 n x 5 methods
}

TEST_CASE("exogenous designs have near-nominal size for every method") {
    McCampaign c;
    c.dgp_grid = {DgpSpec{0.0, NearIntegrated{0.0}, 0.0, 0.0, 250}};
    c.reps = 2000;
    c.master_seed = 20240101;
    const auto cells = run_campaign(c, 0);
    for (const auto& cell : cells) {
        INFO(to_string(cell.method));
        CHECK(cell.rejection_rate > 0.01);
        CHECK(cell.rejection_rate < 0.08);
        CHECK(cell.failures == 0);
        CHECK(cell.mc_se ==
              doctest::Approx(std::sqrt(cell.rejection_rate * (1 - cell.rejection_rate) / 2000))
                  .epsilon(1e-12));
    }
}

TEST_CASE("collect_tstats reproduces campaign rejection decisions") {
    DgpSpec dgp{-0.5, NearIntegrated{0.0}, 0.0, 0.0, 64};
    McCampaign c;
    c.dgp_grid = {dgp};
    c.methods = {McMethod::OLS};
    c.reps = 300;
    c.master_seed = 17;
    const auto cells = run_campaign(c, 0);
    const auto ts = collect_tstats(dgp, McMethod::OLS, 0.0, 300, 17, 0);
    const double crit = normal_quantile(0.975);
    int rejects = 0, fails = 0;
    for (double t : ts) {
        if (!std::isfinite(t)) ++fails;
        else if (std::abs(t) > crit) ++rejects;
    }
    CHECK(fails == cells[0].failures);
    CHECK(double(rejects) / (300 - fails) == doctest::Approx(cells[0].rejection_rate));
}

TEST_CASE("slopes share replication randomness (common random numbers)") {
    DgpSpec dgp{-0.5, NearIntegrated{0.0}, 0.0, 0.0, 128};
    const auto t0 = collect_tstats(dgp, McMethod::OLS, 0.0, 200, 23, 0);
    const auto t1 = collect_tstats(dgp, McMethod::OLS, 0.01, 200, 23, 0);
    double num = 0, d0 = 0, d1 = 0, m0 = mean(t0), m1 = mean(t1);
    for (size_t i = 0; i < t0.size(); ++i) {
        num += (t0[i] - m0) * (t1[i] - m1);
        d0 += (t0[i] - m0) * (t0[i] - m0);
        d1 += (t1[i] - m1) * (t1[i] - m1);
    }
    CHECK(num / std::sqrt(d0 * d1) > 0.9);
}

TEST_CASE("campaign validation") {
    McCampaign c = small_campaign();
    c.reps = 10;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_campaign();
    c.level = 0.7;
    CHECK_THROWS_AS(validate(c), ConfigError);
    c = small_campaign();
    c.dgp_grid.clear();
    CHECK_THROWS_AS(validate(c), ConfigError);
}
