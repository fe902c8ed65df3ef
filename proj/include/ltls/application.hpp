#pragma once

#include <optional>
#include <string>
#include <vector>

namespace ltls {

enum class Frequency { monthly, quarterly };

/// Calendar period as year and sub-period (month 1..12 or quarter 1..4).
struct Period {
    int year = 0;
    int sub = 1;
    bool quarter_form = false;  // parsed from a yyyyQq date
    std::string label;          // original text from the file
};

struct MarketDataset {
    std::vector<Period> dates;
    std::vector<double> index_level;  // price index, strictly positive
    std::vector<double> predictor;
    Frequency frequency = Frequency::monthly;
    std::size_t size() const { return dates.size(); }
};

/// Maps file columns to roles. Either `predictor` or the pair
/// `earnings`/`price` must be set; with the pair, the predictor becomes
/// log(earnings) - log(price).
struct ColumnMap {
    std::string date = "date";
    std::string index = "index";
    std::string predictor;
    std::string earnings;
    std::string price;
};

/// Reads a delimited text file (comma separator, header row). Dates accept
/// yyyymm, yyyy-mm, yyyy-mm-dd or yyyyQq. Rows with gaps, nonpositive index
/// levels or nonmonotone dates raise IngestError naming the row.
MarketDataset ingest_csv(const std::string& path, const ColumnMap& columns,
                         std::optional<Frequency> declared_frequency = std::nullopt);

/// r[k] = ln I_{k+m} - ln I_k, length n - m.
std::vector<double> long_horizon_returns(const MarketDataset& ds, int m);

struct HorizonScanResult {
    int horizon_m = 0;
    std::string setup;  // "S1", "S2", "S3"
    double t_stat = 0.0;
    int n_effective = 0;
    bool degenerate = false;  // estimation failed at this horizon
    std::string note;
};

/// LTLS predictability tests of m-period returns on the lagged predictor,
/// for each horizon and setup. S1/S2 use residual-variance-scaled kernels.
std::vector<HorizonScanResult> predictability_scan(const MarketDataset& ds,
                                                   const std::vector<int>& m_grid,
                                                   const std::vector<std::string>& setups);

struct MemoryTableRow {
    std::string series;  // "returns" or "predictor"
    int horizon_m = 0;   // 0 for the predictor
    double b = 0.65;
    std::string method;  // "LW" or "ELW"
    double d_hat = 0.0;
    bool failed = false;
    std::string note;
};

/// Long-memory estimates for returns at each horizon and for the predictor,
/// across bandwidth exponents.
std::vector<MemoryTableRow> memory_table(const MarketDataset& ds, const std::vector<double>& b_grid,
                                         const std::vector<int>& m_grid);

}  // namespace ltls
