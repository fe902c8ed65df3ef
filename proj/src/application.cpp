#include "ltls/application.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <span>
#include <sstream>

#include "ltls/errors.hpp"
#include "ltls/estimator.hpp"
#include "ltls/memory.hpp"

namespace ltls {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

Period parse_period(const std::string& raw, std::size_t row) {
    Period p;
    p.label = raw;
    const std::string s = trim(raw);
    auto fail = [&] {
        throw IngestError("row " + std::to_string(row) + ": unparseable date '" + raw + "'");
    };
    if (s.size() == 6 && std::all_of(s.begin(), s.end(), ::isdigit)) {
        p.year = std::stoi(s.substr(0, 4));  // yyyymm
        p.sub = std::stoi(s.substr(4, 2));
        if (p.sub < 1 || p.sub > 12) fail();
        return p;
    }
    if (s.size() >= 6 && (s[4] == 'Q' || s[4] == 'q')) {  // yyyyQq
        p.year = std::stoi(s.substr(0, 4));
        p.sub = std::stoi(s.substr(5));
        p.quarter_form = true;
        if (p.sub < 1 || p.sub > 4) fail();
        return p;
    }
    if (s.size() >= 7 && s[4] == '-') {  // yyyy-mm or yyyy-mm-dd
        p.year = std::stoi(s.substr(0, 4));
        p.sub = std::stoi(s.substr(5, 2));
        if (p.sub < 1 || p.sub > 12) fail();
        return p;
    }
    fail();
    return p;
}

// Month-scaled rank so monthly and quarterly labels order consistently.
int period_rank(const Period& p) { return p.year * 12 + (p.quarter_form ? p.sub * 3 : p.sub); }

double parse_number(const std::string& raw, std::size_t row, const std::string& col) {
    const std::string s = trim(raw);
    if (s.empty() || s == "NA" || s == "NaN" || s == ".")
        throw IngestError("row " + std::to_string(row) + ": missing value in column '" + col + "'");
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw IngestError("row " + std::to_string(row) + ": bad number '" + raw + "' in column '" +
                          col + "'");
    }
}

}  // namespace

MarketDataset ingest_csv(const std::string& path, const ColumnMap& columns,
                         std::optional<Frequency> declared_frequency) {
    std::ifstream in(path);
    if (!in) throw IngestError("cannot open '" + path + "'");

    std::string line;
    if (!std::getline(in, line)) throw IngestError("'" + path + "': empty file");
    const auto header = split_csv_line(line);
    auto col_index = [&](const std::string& name) -> int {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trim(header[i]) == name) return static_cast<int>(i);
        return -1;
    };

    const int c_date = col_index(columns.date);
    const int c_index = col_index(columns.index);
    if (c_date < 0) throw IngestError("'" + path + "': missing date column '" + columns.date + "'");
    if (c_index < 0)
        throw IngestError("'" + path + "': missing index column '" + columns.index + "'");

    const bool log_ratio = columns.predictor.empty();
    int c_pred = -1, c_earn = -1, c_price = -1;
    if (log_ratio) {
        if (columns.earnings.empty() || columns.price.empty())
            throw IngestError("column map needs either a predictor or earnings+price columns");
        c_earn = col_index(columns.earnings);
        c_price = col_index(columns.price);
        if (c_earn < 0 || c_price < 0)
            throw IngestError("'" + path + "': missing earnings/price columns");
    } else {
        c_pred = col_index(columns.predictor);
        if (c_pred < 0)
            throw IngestError("'" + path + "': missing predictor column '" + columns.predictor + "'");
    }

    MarketDataset ds;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        auto field = [&](int i, const char* what) -> const std::string& {
            if (i < 0 || static_cast<std::size_t>(i) >= fields.size())
                throw IngestError("row " + std::to_string(row) + ": missing " + what + " field");
            return fields[static_cast<std::size_t>(i)];
        };

        ds.dates.push_back(parse_period(field(c_date, "date"), row));
        const double level = parse_number(field(c_index, "index"), row, columns.index);
        if (!(level > 0.0))
            throw IngestError("row " + std::to_string(row) + ": nonpositive index level");
        ds.index_level.push_back(level);

        if (log_ratio) {
            const double e = parse_number(field(c_earn, "earnings"), row, columns.earnings);
            const double p = parse_number(field(c_price, "price"), row, columns.price);
            if (!(e > 0.0) || !(p > 0.0))
                throw IngestError("row " + std::to_string(row) +
                                  ": earnings/price must be positive for the log ratio");
            ds.predictor.push_back(std::log(e) - std::log(p));
        } else {
            ds.predictor.push_back(parse_number(field(c_pred, "predictor"), row, columns.predictor));
        }
    }
    if (ds.size() < 3) throw IngestError("'" + path + "': fewer than 3 data rows");

    for (std::size_t i = 1; i < ds.size(); ++i)
        if (period_rank(ds.dates[i]) <= period_rank(ds.dates[i - 1]))
            throw IngestError("row " + std::to_string(i + 2) + ": dates not strictly increasing");

    if (declared_frequency) {
        ds.frequency = *declared_frequency;
    } else if (ds.dates[0].quarter_form) {
        ds.frequency = Frequency::quarterly;
    } else {
        const int step = period_rank(ds.dates[1]) - period_rank(ds.dates[0]);
        ds.frequency = step >= 3 ? Frequency::quarterly : Frequency::monthly;
    }
    return ds;
}

std::vector<double> long_horizon_returns(const MarketDataset& ds, int m) {
    const auto n = ds.size();
    if (m < 1) throw std::domain_error("long_horizon_returns: m must be >= 1");
    if (static_cast<std::size_t>(m) >= n)
        throw std::domain_error("long_horizon_returns: horizon exceeds sample");
    std::vector<double> r(n - static_cast<std::size_t>(m));
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = std::log(ds.index_level[k + static_cast<std::size_t>(m)]) -
               std::log(ds.index_level[k]);
    return r;
}

std::vector<HorizonScanResult> predictability_scan(const MarketDataset& ds,
                                                   const std::vector<int>& m_grid,
                                                   const std::vector<std::string>& setups) {
    std::vector<HorizonScanResult> out;
    for (int m : m_grid) {
        const auto r = long_horizon_returns(ds, m);
        const std::span<const double> x_pairs(ds.predictor.data(), r.size());
        for (const auto& name : setups) {
            HorizonScanResult res;
            res.horizon_m = m;
            res.setup = name;
            res.n_effective = static_cast<int>(r.size());
            SetupId id;
            if (name == "S1") id = SetupId::of(Setup::S1, true);
            else if (name == "S2") id = SetupId::of(Setup::S2, true);
            else if (name == "S3") id = SetupId::of(Setup::S3);
            else throw ConfigError("predictability_scan: unknown setup " + name);
            try {
                const EstimationResult er =
                    run_setup(r, x_pairs, ds.predictor, m, id, 0.0);
                res.t_stat = er.t_stat;
            } catch (const EstimationError& e) {
                res.degenerate = true;
                res.note = e.what();
            } catch (const std::domain_error& e) {  // horizon leaves too few pairs
                res.degenerate = true;
                res.note = e.what();
            }
            out.push_back(std::move(res));
        }
    }
    return out;
}

std::vector<MemoryTableRow> memory_table(const MarketDataset& ds, const std::vector<double>& b_grid,
                                         const std::vector<int>& m_grid) {
    std::vector<MemoryTableRow> out;
    auto add = [&](const std::string& series, int m, const std::vector<double>& x) {
        for (double b : b_grid) {
            for (const bool exact : {false, true}) {
                MemoryTableRow row;
                row.series = series;
                row.horizon_m = m;
                row.b = b;
                row.method = exact ? "ELW" : "LW";
                try {
                    const MemoryEstimate est = exact ? elw_estimate(x, b) : lw_estimate(x, b);
                    row.d_hat = est.d_hat;
                } catch (const Error& e) {
                    row.failed = true;
                    row.note = e.what();
                }
                out.push_back(std::move(row));
            }
        }
    };

    for (int m : m_grid) add("returns", m, long_horizon_returns(ds, m));
    add("predictor", 0, ds.predictor);
    return out;
}

}  // namespace ltls
