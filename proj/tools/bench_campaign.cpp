// Throughput comparison of the serial reference executor against the
// OpenMP one, on a fixed small size campaign. Also verifies that both
// produce identical cells.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "ltls/montecarlo.hpp"

using namespace ltls;

namespace {

McCampaign bench_campaign() {
    McCampaign c;
    c.dgp_grid = {
        DgpSpec{-0.95, NearIntegrated{0.0}, 0.0, 0.0, 250},
        DgpSpec{0.0, NearIntegrated{-10.0}, 0.0, 0.0, 250},
        DgpSpec{-0.95, FractionalTypeII{1.2}, 0.0, 0.0, 250},
    };
    c.reps = 1000;
    c.master_seed = 7;
    return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
    const McCampaign c = bench_campaign();
    const double work = static_cast<double>(c.reps) * c.dgp_grid.size() * c.methods.size();

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = run_campaign_serial(c);
    const double t_serial = seconds_since(t0);

    const int threads = omp_get_max_threads();
    t0 = std::chrono::steady_clock::now();
    const auto parallel = run_campaign(c, threads);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.size() == parallel.size();
    for (size_t i = 0; identical && i < serial.size(); ++i)
        identical = serial[i].rejection_rate == parallel[i].rejection_rate &&
                    serial[i].failures == parallel[i].failures;

    std::printf("serial reference : %8.3f s  (%.0f test evals/s)\n", t_serial, work / t_serial);
    std::printf("openmp x%-2d       : %8.3f s  (%.0f test evals/s)\n", threads, t_parallel,
                work / t_parallel);
    std::printf("speedup          : %8.2fx\n", t_serial / t_parallel);
    std::printf("results identical: %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
