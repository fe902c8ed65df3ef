#include "ltls/montecarlo.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "ltls/baselines.hpp"
#include "ltls/errors.hpp"
#include "ltls/estimator.hpp"
#include "ltls/stats.hpp"

namespace ltls {

const char* to_string(McMethod m) {
    switch (m) {
        case McMethod::T1: return "T1";
        case McMethod::T2: return "T2";
        case McMethod::T3: return "T3";
        case McMethod::IVX: return "IVX";
        case McMethod::OLS: return "OLS";
    }
    return "?";
}

McMethod mc_method_from_string(const std::string& s) {
    if (s == "T1") return McMethod::T1;
    if (s == "T2") return McMethod::T2;
    if (s == "T3") return McMethod::T3;
    if (s == "IVX") return McMethod::IVX;
    if (s == "OLS") return McMethod::OLS;
    throw ConfigError("unknown method: " + s);
}

void validate(const McCampaign& c) {
    if (c.reps < 100) throw ConfigError("campaign: reps must be >= 100");
    if (!(c.level > 0.0 && c.level < 0.5)) throw ConfigError("campaign: level must be in (0, 0.5)");
    if (c.methods.empty() || c.dgp_grid.empty() || c.beta_grid.empty())
        throw ConfigError("campaign: empty grid");
    for (const auto& d : c.dgp_grid) ltls::validate(d);
}

std::uint64_t dgp_cell_key(const DgpSpec& dgp) {
    auto bits = [](double v) {
        std::uint64_t u;
        std::memcpy(&u, &v, sizeof u);
        return u;
    };
    std::uint64_t s = 0x243f6a8885a308d3ULL;  // arbitrary fixed offset
    std::uint64_t h = 0;
    const bool ni = std::holds_alternative<NearIntegrated>(dgp.regressor);
    const double c_or_d =
        ni ? std::get<NearIntegrated>(dgp.regressor).c : std::get<FractionalTypeII>(dgp.regressor).d;
    s ^= ni ? 1ULL : 2ULL;
    h ^= splitmix64(s);
    s ^= bits(c_or_d);
    h ^= splitmix64(s);
    s ^= bits(dgp.delta);
    h ^= splitmix64(s);
    s ^= bits(dgp.mu);
    h ^= splitmix64(s);
    s ^= static_cast<std::uint64_t>(dgp.n);
    h ^= splitmix64(s);
    return h;
}

namespace {

enum : std::uint8_t { kAccept = 0, kReject = 1, kFailure = 2 };

SetupId setup_for(McMethod m) {
    switch (m) {
        case McMethod::T1: return SetupId::of(Setup::S1);
        case McMethod::T2: return SetupId::of(Setup::S2);
        case McMethod::T3: return SetupId::of(Setup::S3);
        default: throw std::logic_error("setup_for: not an LTLS method");
    }
}

double method_tstat(McMethod method, std::span<const double> y_pairs,
                    std::span<const double> x_pairs, const PrelimStats& prelim, double beta0) {
    switch (method) {
        case McMethod::OLS: {
            const BaselineResult r = ols_ttest(y_pairs, x_pairs, beta0);
            return r.t_stat;  // NaN when degenerate
        }
        case McMethod::IVX: {
            const BaselineResult r = ivx_ttest(y_pairs, x_pairs, beta0);
            return r.t_stat;
        }
        default: {
            const ResolvedSetup rs =
                resolve_setup(setup_for(method), static_cast<int>(y_pairs.size()), prelim);
            RegressionInput input;
            input.y.assign(y_pairs.begin(), y_pairs.end());
            input.fx.assign(x_pairs.begin(), x_pairs.end());
            input.scheme = rs.scheme;
            input.beta0 = beta0;
            return ltls_tstat(input, rs.variant).t_stat;
        }
    }
}

/// One replication of one DGP cell: simulate the path once, then score every
/// (beta, method) combination. Outcomes are written to a slot of size
/// n_beta * n_method.
void run_replication(const McCampaign& c, const DgpSpec& dgp, int rep, double crit,
                     std::uint8_t* slot) {
    RngStream stream(derive_seed(c.master_seed, dgp_cell_key(dgp), static_cast<std::uint64_t>(rep)));
    const Innovations innov = gen_innovations(dgp.delta, dgp.n, stream);
    std::vector<double> x;
    if (const auto* ni = std::get_if<NearIntegrated>(&dgp.regressor))
        x = gen_near_integrated(ni->c, innov.xi);
    else
        x = gen_fractional(std::get<FractionalTypeII>(dgp.regressor).d, innov.xi);

    const std::size_t n = static_cast<std::size_t>(dgp.n);
    std::vector<double> y(n);
    const std::size_t nm = c.methods.size();

    for (std::size_t bi = 0; bi < c.beta_grid.size(); ++bi) {
        const double beta = c.beta_grid[bi];
        for (std::size_t k = 0; k < n; ++k) {
            const double xlag = k == 0 ? 0.0 : x[k - 1];
            y[k] = dgp.mu + beta * xlag + innov.u[k];
        }
        std::span<const double> y_pairs(y.data() + 1, n - 1);
        std::span<const double> x_pairs(x.data(), n - 1);

        PrelimStats prelim;
        bool prelim_ok = true;
        try {
            prelim = prelim_stats_frame(y_pairs, x_pairs, x, 1);
        } catch (const EstimationError&) {
            prelim_ok = false;
        }

        for (std::size_t mi = 0; mi < nm; ++mi) {
            std::uint8_t outcome = kFailure;
            if (prelim_ok) {
                try {
                    const double t = method_tstat(c.methods[mi], y_pairs, x_pairs, prelim, 0.0);
                    if (std::isfinite(t)) outcome = std::abs(t) > crit ? kReject : kAccept;
                } catch (const EstimationError&) {
                    outcome = kFailure;
                }
            }
            slot[bi * nm + mi] = outcome;
        }
    }
}

std::vector<McCell> reduce_outcomes(const McCampaign& c, const DgpSpec& dgp,
                                    const std::vector<std::uint8_t>& outcomes) {
    const std::size_t nm = c.methods.size();
    const std::size_t nb = c.beta_grid.size();
    std::vector<McCell> cells;
    cells.reserve(nb * nm);
    for (std::size_t bi = 0; bi < nb; ++bi) {
        for (std::size_t mi = 0; mi < nm; ++mi) {
            int rejects = 0, failures = 0;
            for (int rep = 0; rep < c.reps; ++rep) {
                const std::uint8_t o =
                    outcomes[static_cast<std::size_t>(rep) * nb * nm + bi * nm + mi];
                if (o == kReject) ++rejects;
                else if (o == kFailure) ++failures;
            }
            McCell cell;
            cell.method = c.methods[mi];
            cell.dgp = dgp;
            cell.beta = c.beta_grid[bi];
            cell.reps = c.reps;
            cell.failures = failures;
            const int n_ok = c.reps - failures;
            cell.rejection_rate = n_ok > 0 ? static_cast<double>(rejects) / n_ok : 0.0;
            cell.mc_se = n_ok > 0 ? std::sqrt(cell.rejection_rate * (1.0 - cell.rejection_rate) /
                                              static_cast<double>(n_ok))
                                  : 0.0;
            cells.push_back(cell);
        }
    }
    return cells;
}

std::vector<McCell> run_impl(const McCampaign& c, int threads, bool parallel) {
    validate(c);
    const double crit = normal_quantile(1.0 - c.level / 2.0);
    const std::size_t slot_size = c.beta_grid.size() * c.methods.size();
    std::vector<McCell> all;
    all.reserve(c.dgp_grid.size() * slot_size);

    for (const DgpSpec& dgp : c.dgp_grid) {
        std::vector<std::uint8_t> outcomes(static_cast<std::size_t>(c.reps) * slot_size, kFailure);
        if (parallel) {
            const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
            for (int rep = 0; rep < c.reps; ++rep)
                run_replication(c, dgp, rep, crit,
                                outcomes.data() + static_cast<std::size_t>(rep) * slot_size);
        } else {
            for (int rep = 0; rep < c.reps; ++rep)
                run_replication(c, dgp, rep, crit,
                                outcomes.data() + static_cast<std::size_t>(rep) * slot_size);
        }
        const auto cells = reduce_outcomes(c, dgp, outcomes);
        all.insert(all.end(), cells.begin(), cells.end());
    }
    return all;
}

}  // namespace

std::vector<McCell> run_campaign(const McCampaign& c, int threads) {
    return run_impl(c, threads, true);
}

std::vector<McCell> run_campaign_serial(const McCampaign& c) { return run_impl(c, 1, false); }

std::vector<double> collect_tstats(const DgpSpec& dgp, McMethod method, double beta, int reps,
                                   std::uint64_t master_seed, int threads) {
    McCampaign c;
    c.methods = {method};
    c.dgp_grid = {dgp};
    c.reps = reps;
    c.master_seed = master_seed;
    c.beta_grid = {beta};
    validate(c);

    std::vector<double> t(static_cast<std::size_t>(reps),
                          std::numeric_limits<double>::quiet_NaN());
    const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt)
    for (int rep = 0; rep < reps; ++rep) {
        RngStream stream(
            derive_seed(master_seed, dgp_cell_key(dgp), static_cast<std::uint64_t>(rep)));
        DgpSpec d = dgp;
        d.beta = beta;
        try {
            const SeriesPair s = gen_series(d, stream);
            std::span<const double> y_pairs(s.y.data() + 1, s.y.size() - 1);
            std::span<const double> x_pairs(s.x.data(), s.x.size() - 1);
            const PrelimStats prelim = prelim_stats_frame(y_pairs, x_pairs, s.x, 1);
            t[static_cast<std::size_t>(rep)] = method_tstat(method, y_pairs, x_pairs, prelim, 0.0);
        } catch (const EstimationError&) {
            // leave NaN
        }
    }
    return t;
}

std::string summarize_csv(const std::vector<McCell>& cells) {
    std::string out;
    out.reserve(cells.size() * 64);
    char line[256];
    for (const auto& cell : cells) {
        const bool ni = std::holds_alternative<NearIntegrated>(cell.dgp.regressor);
        const double c_or_d = ni ? std::get<NearIntegrated>(cell.dgp.regressor).c
                                 : std::get<FractionalTypeII>(cell.dgp.regressor).d;
        std::snprintf(line, sizeof line, "%s,%.6g,%.6g,%d,%.6g,%s,%d,%.6f,%.6f,%d\n",
                      ni ? "ni" : "fractional", c_or_d, cell.dgp.delta, cell.dgp.n, cell.beta,
                      to_string(cell.method), cell.reps, cell.rejection_rate, cell.mc_se,
                      cell.failures);
        out += line;
    }
    return out;
}

}  // namespace ltls
