#include "ltls/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <span>
#include <sstream>

#include <CLI11.hpp>

#include "ltls/baselines.hpp"
#include "ltls/config.hpp"
#include "ltls/csvio.hpp"
#include "ltls/errors.hpp"
#include "ltls/estimator.hpp"
#include "ltls/montecarlo.hpp"
#include "ltls/stats.hpp"
#include "ltls/version.hpp"

namespace ltls {

namespace {

std::string hash_hex(const RunConfig& cfg) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(canonical_config(cfg))));
    return buf;
}

OutputHeader make_header(const RunConfig& cfg) {
    return {kVersion, hash_hex(cfg), cfg.seed};
}

std::vector<McMethod> resolve_methods(const std::vector<std::string>& names,
                                      const std::string& regime) {
    if (!names.empty()) {
        std::vector<McMethod> out;
        for (const auto& s : names) out.push_back(mc_method_from_string(s));
        return out;
    }
    if (regime == "fractional") return {McMethod::T3, McMethod::OLS};
    return {McMethod::T1, McMethod::T2, McMethod::T3, McMethod::IVX, McMethod::OLS};
}

std::vector<DgpSpec> build_grid(const std::string& regime, const std::vector<double>& c_grid,
                                const std::vector<double>& d_grid,
                                const std::vector<double>& delta_grid, const std::vector<int>& n_grid) {
    std::vector<DgpSpec> grid;
    const std::vector<double>& persistence = regime == "ni" ? c_grid : d_grid;
    for (double p : persistence) {
        for (double delta : delta_grid) {
            for (int n : n_grid) {
                DgpSpec dgp;
                dgp.delta = delta;
                dgp.n = n;
                if (regime == "ni") dgp.regressor = NearIntegrated{p};
                else dgp.regressor = FractionalTypeII{p};
                grid.push_back(dgp);
            }
        }
    }
    return grid;
}

void emit_campaign(const RunConfig& cfg, const std::vector<McCell>& cells, std::ostream& out) {
    const std::string columns =
        "regime,c_or_d,delta,n,beta,method,reps,reject_rate,mc_se,failures";
    const std::string body = summarize_csv(cells);
    if (!cfg.out.empty()) {
        write_output_file(cfg.out, make_header(cfg), columns, body);
        out << "wrote " << cells.size() << " rows to " << cfg.out << "\n";
    } else {
        write_output(out, make_header(cfg), columns, body);
    }
}

int cmd_size(const RunConfig& cfg, std::ostream& out) {
    McCampaign campaign;
    campaign.methods = resolve_methods(cfg.size.methods, cfg.size.regime);
    campaign.dgp_grid =
        build_grid(cfg.size.regime, cfg.size.c, cfg.size.d, cfg.size.delta, cfg.size.n);
    campaign.reps = profile_reps(cfg.profile);
    campaign.level = cfg.size.level;
    campaign.master_seed = cfg.seed;
    campaign.beta_grid = {0.0};
    emit_campaign(cfg, run_campaign(campaign, cfg.threads), out);
    return 0;
}

int cmd_power(const RunConfig& cfg, std::ostream& out) {
    McCampaign campaign;
    campaign.methods = resolve_methods(cfg.power.methods, cfg.power.regime);
    campaign.dgp_grid =
        build_grid(cfg.power.regime, cfg.power.c, cfg.power.d, cfg.power.delta, cfg.power.n);
    campaign.reps = profile_reps(cfg.profile);
    campaign.level = cfg.power.level;
    campaign.master_seed = cfg.seed;
    campaign.beta_grid = cfg.power.beta;
    emit_campaign(cfg, run_campaign(campaign, cfg.threads), out);
    return 0;
}

/// Two-column series reader for `estimate`: header row names the columns.
void read_series(const std::string& path, const std::string& col_y, const std::string& col_x,
                 std::vector<double>& y, std::vector<double>& x) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw IngestError("'" + path + "': empty file");

    auto split = [](const std::string& s) {
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                fields.push_back(cur);
                cur.clear();
            } else if (ch != '\r' && ch != ' ') {
                cur += ch;
            }
        }
        fields.push_back(cur);
        return fields;
    };
    const auto header = split(line);
    int iy = -1, ix = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == col_y) iy = static_cast<int>(i);
        if (header[i] == col_x) ix = static_cast<int>(i);
    }
    if (iy < 0 || ix < 0)
        throw IngestError("'" + path + "': need columns '" + col_y + "' and '" + col_x + "'");

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto fields = split(line);
        if (static_cast<std::size_t>(std::max(iy, ix)) >= fields.size())
            throw IngestError("row " + std::to_string(row) + ": too few fields");
        try {
            y.push_back(std::stod(fields[static_cast<std::size_t>(iy)]));
            x.push_back(std::stod(fields[static_cast<std::size_t>(ix)]));
        } catch (const std::exception&) {
            throw IngestError("row " + std::to_string(row) + ": bad numeric field");
        }
    }
    if (y.size() < 16) throw IngestError("'" + path + "': need at least 16 rows");
}

int cmd_estimate(const RunConfig& cfg, std::ostream& out) {
    std::vector<double> y_series, x_series;
    read_series(cfg.estimate.input, cfg.estimate.col_y, cfg.estimate.col_x, y_series, x_series);

    const std::size_t n = y_series.size();
    std::span<const double> y_pairs(y_series.data() + 1, n - 1);
    std::span<const double> x_pairs(x_series.data(), n - 1);

    std::ostringstream body;
    char line[512];
    out << "series: " << cfg.estimate.input << "  (n = " << n << ", pairs = " << n - 1 << ")\n";

    for (const auto& name : cfg.estimate.setups) {
        Setup s = name == "S1" ? Setup::S1 : name == "S2" ? Setup::S2 : Setup::S3;
        try {
            const PrelimStats prelim = prelim_stats_frame(y_pairs, x_pairs, x_series, 1);
            const ResolvedSetup rs = resolve_setup(SetupId::of(s, cfg.estimate.empirical),
                                                   static_cast<int>(y_pairs.size()), prelim);
            RegressionInput input;
            input.y.assign(y_pairs.begin(), y_pairs.end());
            input.fx.assign(x_pairs.begin(), x_pairs.end());
            input.scheme = rs.scheme;
            input.beta0 = cfg.estimate.beta0;

            EstimationResult r = ltls_estimate(input);
            std::string t_text = "degenerate studentization";
            char t_field[32] = "";
            try {
                r = ltls_tstat(input, rs.variant);
                std::snprintf(t_field, sizeof t_field, "%.6f", r.t_stat);
                t_text = t_field;
            } catch (const DegenerateStudentization&) {
            }
            r.delta_tilde = prelim.delta_tilde;

            std::snprintf(line, sizeof line,
                          "%s,%.10g,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.6f,%.6g,%d,%d\n",
                          name.c_str(), r.beta_hat, t_field, r.c_stat, r.numerator, r.a_row[1],
                          r.v11, r.v12, r.v22, r.sigma_tilde2, r.delta_tilde,
                          r.scheme_used.c_n, r.scheme_used.l_n, r.scheme_used.l_star);
            body << line;
            out << "  " << name << ": beta_hat = " << r.beta_hat << ", t = " << t_text
                << "  (c_n = " << r.scheme_used.c_n << ", l_n = " << r.scheme_used.l_n << ")\n";
        } catch (const EstimationError& e) {
            body << name << ",,,,,,,,,,,,,\n";
            out << "  " << name << ": degenerate (" << e.what() << ")\n";
        }
    }
    try {
        const BaselineResult ols = ols_ttest(y_pairs, x_pairs, cfg.estimate.beta0);
        out << "  OLS: beta_hat = " << ols.beta_hat << ", t = " << ols.t_stat << "\n";
        const BaselineResult ivx = ivx_ttest(y_pairs, x_pairs, cfg.estimate.beta0);
        out << "  IVX: beta_hat = " << ivx.beta_hat << ", t = " << ivx.t_stat << "\n";
    } catch (const EstimationError& e) {
        out << "  baselines degenerate: " << e.what() << "\n";
    }

    if (!cfg.out.empty()) {
        write_output_file(cfg.out, make_header(cfg),
                          "setup,beta_hat,t_stat,C_n,numerator,A2,V11,V12,V22,sigma_tilde2,"
                          "delta_tilde,c_n,l_n,l_star",
                          body.str());
        out << "wrote " << cfg.out << "\n";
    }
    return 0;
}

int cmd_predict(const RunConfig& cfg, std::ostream& out) {
    const MarketDataset ds = ingest_csv(cfg.predict.data, cfg.predict.columns,
                                        cfg.predict.frequency);
    std::vector<int> m_grid = cfg.predict.m;
    if (m_grid.empty())
        for (int m = 1; m <= 24; ++m) m_grid.push_back(m);

    const auto results = predictability_scan(ds, m_grid, cfg.predict.setups);
    std::ostringstream body;
    char line[160];
    for (const auto& r : results) {
        if (r.degenerate)
            std::snprintf(line, sizeof line, "%d,%s,,%d\n", r.horizon_m, r.setup.c_str(),
                          r.n_effective);
        else
            std::snprintf(line, sizeof line, "%d,%s,%.6f,%d\n", r.horizon_m, r.setup.c_str(),
                          r.t_stat, r.n_effective);
        body << line;
    }
    const double crit = normal_quantile(0.975);
    out << "predictability scan on " << cfg.predict.data << " ("
        << (ds.frequency == Frequency::monthly ? "monthly" : "quarterly") << ", n = " << ds.size()
        << "): " << results.size() << " cells, 5% two-sided critical value " << crit << "\n";
    if (!cfg.out.empty()) {
        write_output_file(cfg.out, make_header(cfg), "m,setup,t_stat,n_eff", body.str());
        out << "wrote " << cfg.out << "\n";
    } else {
        write_output(out, make_header(cfg), "m,setup,t_stat,n_eff", body.str());
    }
    return 0;
}

int cmd_memory(const RunConfig& cfg, std::ostream& out) {
    const MarketDataset ds = ingest_csv(cfg.memory.data, cfg.memory.columns, cfg.memory.frequency);
    const auto rows = memory_table(ds, cfg.memory.b, cfg.memory.m);
    std::ostringstream body;
    char line[160];
    for (const auto& r : rows) {
        if (r.failed)
            std::snprintf(line, sizeof line, "%s,%d,%.6g,%s,\n", r.series.c_str(), r.horizon_m,
                          r.b, r.method.c_str());
        else
            std::snprintf(line, sizeof line, "%s,%d,%.6g,%s,%.4f\n", r.series.c_str(), r.horizon_m,
                          r.b, r.method.c_str(), r.d_hat);
        body << line;
    }
    out << "memory table on " << cfg.memory.data << ": " << rows.size() << " rows\n";
    if (!cfg.out.empty()) {
        write_output_file(cfg.out, make_header(cfg), "series,horizon,b,method,d_hat", body.str());
        out << "wrote " << cfg.out << "\n";
    } else {
        write_output(out, make_header(cfg), "series,horizon,b,method,d_hat", body.str());
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"locally trimmed least squares: estimation, size/power campaigns, "
                 "long-horizon predictability"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig cfg;
    bool seed_set = false, profile_set = false, threads_set = false, out_set = false,
         level_set = false;
    std::uint64_t seed_cli = 0;
    std::string profile_cli, out_cli;
    int threads_cli = 0;
    double level_cli = 0.05;

    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed_cli, "master seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--profile", profile_cli, "reps preset: desk (2000) or full (10000)")
        ->each([&](const std::string&) { profile_set = true; });
    app.add_option("--threads", threads_cli, "worker threads (0 = all)")
        ->each([&](const std::string&) { threads_set = true; });
    app.add_option("--out", out_cli, "output CSV path")
        ->each([&](const std::string&) { out_set = true; });
    app.add_option("--level", level_cli, "nominal test level")
        ->each([&](const std::string&) { level_set = true; });

    auto* size_cmd = app.add_subcommand("size", "null rejection frequencies over a DGP grid");
    size_cmd->fallthrough();
    std::string regime;
    std::vector<double> c_grid, d_grid, delta_grid, beta_grid;
    std::vector<int> n_grid;
    std::vector<std::string> methods;
    size_cmd->add_option("--regime", regime, "ni or fractional");
    size_cmd->add_option("--c", c_grid, "near-unity parameters")->delimiter(',');
    size_cmd->add_option("--d", d_grid, "fractional memory parameters")->delimiter(',');
    size_cmd->add_option("--delta", delta_grid, "endogeneity correlations")->delimiter(',');
    size_cmd->add_option("--n", n_grid, "sample sizes")->delimiter(',');
    size_cmd->add_option("--methods", methods, "subset of T1 T2 T3 IVX OLS");

    auto* power_cmd = app.add_subcommand("power", "rejection frequencies over a slope grid");
    power_cmd->fallthrough();
    power_cmd->add_option("--regime", regime, "ni or fractional");
    power_cmd->add_option("--c", c_grid, "near-unity parameters")->delimiter(',');
    power_cmd->add_option("--d", d_grid, "fractional memory parameters")->delimiter(',');
    power_cmd->add_option("--delta", delta_grid, "endogeneity correlations")->delimiter(',');
    power_cmd->add_option("--n", n_grid, "sample sizes")->delimiter(',');
    power_cmd->add_option("--methods", methods, "subset of T1 T2 T3 IVX OLS");
    power_cmd->add_option("--beta", beta_grid, "slope grid")->delimiter(',');

    auto* est_cmd = app.add_subcommand("estimate", "single-series trimmed-LS report");
    est_cmd->fallthrough();
    std::string input_path, col_y, col_x;
    std::vector<std::string> setups;
    double beta0 = 0.0;
    bool beta0_set = false, empirical = false;
    est_cmd->add_option("--input", input_path, "two-column CSV (header row)");
    est_cmd->add_option("--setups", setups, "subset of S1 S2 S3");
    est_cmd->add_option("--beta0", beta0, "null slope")->each([&](const std::string&) { beta0_set = true; });
    est_cmd->add_option("--col-y", col_y, "response column name");
    est_cmd->add_option("--col-x", col_x, "regressor column name");
    est_cmd->add_flag("--empirical", empirical, "residual-variance-scaled S1/S2 kernels");

    auto* pred_cmd = app.add_subcommand("predict", "long-horizon predictability scan");
    pred_cmd->fallthrough();
    std::string data_path, date_col, index_col, pred_col, earn_col, price_col, freq;
    std::vector<int> m_grid;
    pred_cmd->add_option("--data", data_path, "market dataset CSV");
    pred_cmd->add_option("--m", m_grid, "horizons")->delimiter(',');
    pred_cmd->add_option("--setups", setups, "subset of S1 S2 S3");
    pred_cmd->add_option("--date-col", date_col, "date column");
    pred_cmd->add_option("--index-col", index_col, "price index column");
    pred_cmd->add_option("--predictor-col", pred_col, "ready predictor column");
    pred_cmd->add_option("--earnings-col", earn_col, "earnings column (log-ratio predictor)");
    pred_cmd->add_option("--price-col", price_col, "price column (log-ratio predictor)");
    pred_cmd->add_option("--frequency", freq, "monthly or quarterly");

    auto* mem_cmd = app.add_subcommand("memory", "long-memory estimates table");
    mem_cmd->fallthrough();
    std::vector<double> b_grid;
    mem_cmd->add_option("--data", data_path, "market dataset CSV");
    mem_cmd->add_option("--b", b_grid, "bandwidth exponents")->delimiter(',');
    mem_cmd->add_option("--m", m_grid, "return horizons")->delimiter(',');
    mem_cmd->add_option("--date-col", date_col, "date column");
    mem_cmd->add_option("--index-col", index_col, "price index column");
    mem_cmd->add_option("--predictor-col", pred_col, "ready predictor column");
    mem_cmd->add_option("--earnings-col", earn_col, "earnings column");
    mem_cmd->add_option("--price-col", price_col, "price column");
    mem_cmd->add_option("--frequency", freq, "monthly or quarterly");

    try {
        app.parse(argc, argv);

        if (!config_path.empty()) cfg = load_config_file(config_path);
        if (seed_set) cfg.seed = seed_cli;
        if (profile_set) cfg.profile = profile_cli;
        if (threads_set) cfg.threads = threads_cli;
        if (out_set) cfg.out = out_cli;
        if (level_set) {
            cfg.size.level = level_cli;
            cfg.power.level = level_cli;
        }

        if (!regime.empty()) cfg.size.regime = cfg.power.regime = regime;
        if (!c_grid.empty()) cfg.size.c = cfg.power.c = c_grid;
        if (!d_grid.empty()) cfg.size.d = cfg.power.d = d_grid;
        if (!delta_grid.empty()) cfg.size.delta = cfg.power.delta = delta_grid;
        if (!n_grid.empty()) cfg.size.n = cfg.power.n = n_grid;
        if (!methods.empty()) cfg.size.methods = cfg.power.methods = methods;
        if (!beta_grid.empty()) cfg.power.beta = beta_grid;

        if (!input_path.empty()) cfg.estimate.input = input_path;
        if (!setups.empty()) cfg.estimate.setups = cfg.predict.setups = setups;
        if (beta0_set) cfg.estimate.beta0 = beta0;
        if (!col_y.empty()) cfg.estimate.col_y = col_y;
        if (!col_x.empty()) cfg.estimate.col_x = col_x;
        if (empirical) cfg.estimate.empirical = true;

        if (!data_path.empty()) cfg.predict.data = cfg.memory.data = data_path;
        if (!m_grid.empty()) {
            cfg.predict.m = m_grid;
            cfg.memory.m = m_grid;
        }
        if (!b_grid.empty()) cfg.memory.b = b_grid;
        auto apply_columns = [&](ColumnMap& map) {
            if (!date_col.empty()) map.date = date_col;
            if (!index_col.empty()) map.index = index_col;
            if (!pred_col.empty()) map.predictor = pred_col;
            if (!earn_col.empty()) map.earnings = earn_col;
            if (!price_col.empty()) map.price = price_col;
        };
        apply_columns(cfg.predict.columns);
        apply_columns(cfg.memory.columns);
        if (!freq.empty()) {
            if (freq != "monthly" && freq != "quarterly")
                throw ConfigError("frequency: must be 'monthly' or 'quarterly'");
            cfg.predict.frequency = cfg.memory.frequency =
                freq == "monthly" ? Frequency::monthly : Frequency::quarterly;
        }
        validate(cfg);

        if (size_cmd->parsed()) return cmd_size(cfg, out);
        if (power_cmd->parsed()) return cmd_power(cfg, out);
        if (est_cmd->parsed()) {
            if (cfg.estimate.input.empty()) throw ConfigError("estimate.input: missing series file");
            return cmd_estimate(cfg, out);
        }
        if (pred_cmd->parsed()) {
            if (cfg.predict.data.empty()) throw ConfigError("predict.data: missing dataset path");
            return cmd_predict(cfg, out);
        }
        if (mem_cmd->parsed()) {
            if (cfg.memory.data.empty()) throw ConfigError("memory.data: missing dataset path");
            return cmd_memory(cfg, out);
        }
        err << "no subcommand\n";
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "argument error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ltls
