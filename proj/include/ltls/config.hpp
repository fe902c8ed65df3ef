#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ltls/application.hpp"

namespace ltls {

struct SizeConfig {
    std::string regime = "ni";                                // "ni" or "fractional"
    std::vector<double> c{0.0, -5.0, -10.0, -20.0, -50.0};    // near-unity grid
    std::vector<double> d{0.75, 0.8, 0.9, 1.0, 1.1, 1.2};     // fractional grid
    std::vector<double> delta{-0.95, -0.5, 0.0, 0.5, 0.95};
    std::vector<int> n{250, 500, 750, 1000};
    std::vector<std::string> methods;  // empty = regime default
    double level = 0.05;
};

struct PowerConfig {
    std::string regime = "ni";
    std::vector<double> c{0.0};
    std::vector<double> d{0.8, 1.0, 1.2};
    std::vector<double> delta{-0.95};
    std::vector<int> n{250};
    std::vector<std::string> methods;
    std::vector<double> beta{0.0,   0.0025, 0.005, 0.0075, 0.01,
                             0.0125, 0.015,  0.02,  0.025,  0.03};
    double level = 0.05;
};

struct EstimateConfig {
    std::string input;
    std::vector<std::string> setups{"S1", "S2", "S3"};
    double beta0 = 0.0;
    std::string col_y = "y";
    std::string col_x = "x";
    bool empirical = false;  // residual-variance-scaled S1/S2 kernels
};

struct PredictConfig {
    std::string data;
    std::vector<int> m;  // empty = 1..24
    std::vector<std::string> setups{"S1", "S2", "S3"};
    ColumnMap columns;
    std::optional<Frequency> frequency;
};

struct MemoryConfig {
    std::string data;
    std::vector<double> b{0.55, 0.65, 0.75};
    std::vector<int> m{1, 12, 24};
    ColumnMap columns;
    std::optional<Frequency> frequency;
};

struct RunConfig {
    std::uint64_t seed = 20240101;
    std::string profile = "desk";  // desk = 2000 reps, full = 10000 reps
    int threads = 0;               // 0 = all available
    std::string out;

    SizeConfig size;
    PowerConfig power;
    EstimateConfig estimate;
    PredictConfig predict;
    MemoryConfig memory;
};

/// Parses the JSON config file. Unknown keys are rejected with their path.
RunConfig load_config_file(const std::string& path);

/// Field-level validation shared by the file loader and the CLI overrides;
/// throws ConfigError with the offending field path.
void validate(const RunConfig& cfg);

int profile_reps(const std::string& profile);

/// Canonical serialized form of the resolved configuration (sorted keys);
/// hashed into output headers.
std::string canonical_config(const RunConfig& cfg);

}  // namespace ltls
