#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltls/dgp.hpp"

namespace ltls {

enum class McMethod { T1, T2, T3, IVX, OLS };

const char* to_string(McMethod m);
McMethod mc_method_from_string(const std::string& s);

/// A size/power campaign: a DGP grid crossed with slopes and test methods.
/// Every (DGP, replication) derives one random stream keyed by
/// (master_seed, DGP cell, replication); slopes and methods share the stream
/// so all tests see the same simulated paths (common random numbers).
struct McCampaign {
    std::vector<McMethod> methods{McMethod::T1, McMethod::T2, McMethod::T3, McMethod::IVX,
                                  McMethod::OLS};
    std::vector<DgpSpec> dgp_grid;
    int reps = 10000;
    double level = 0.05;
    std::uint64_t master_seed = 20240101;
    std::vector<double> beta_grid{0.0};
};

void validate(const McCampaign& c);

struct McCell {
    McMethod method = McMethod::T3;
    DgpSpec dgp;
    double beta = 0.0;
    int reps = 0;
    double rejection_rate = 0.0;
    double mc_se = 0.0;  // sqrt(p (1-p) / n_successful)
    int failures = 0;
};

/// Runs the campaign with OpenMP over replications. Output is ordered
/// dgp-major, then beta, then method, and is bit-identical for any thread
/// count (outcomes land in preallocated per-replication slots and are
/// reduced serially).
std::vector<McCell> run_campaign(const McCampaign& c, int threads = 0);

/// Plain-loop reference executor; must produce bit-identical cells.
std::vector<McCell> run_campaign_serial(const McCampaign& c);

/// t-statistics of a single method over reps replications (NaN = failed
/// replication). Stream derivation matches run_campaign.
std::vector<double> collect_tstats(const DgpSpec& dgp, McMethod method, double beta, int reps,
                                   std::uint64_t master_seed, int threads = 0);

/// Stream key for a DGP cell (slope and method excluded by design).
std::uint64_t dgp_cell_key(const DgpSpec& dgp);

/// CSV body (no file header block) in paper-table order:
/// regime,c_or_d,delta,n,beta,method,reps,reject_rate,mc_se,failures.
std::string summarize_csv(const std::vector<McCell>& cells);

}  // namespace ltls
