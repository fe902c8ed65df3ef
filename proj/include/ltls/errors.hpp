#pragma once

#include <stdexcept>
#include <string>

namespace ltls {

/// Base class for all estimation/ingestion failures raised by this library.
/// The Monte Carlo engine catches EstimationError per replication and records
/// a failure instead of aborting the cell.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EstimationError : Error {
    using Error::Error;
};

// Regressor (or instrument cross-moment) carries no usable variation.
struct SingularDesign : EstimationError {
    using EstimationError::EstimationError;
};

// Trimming weight vector summed to zero (pathological c_n).
struct DegenerateWeights : EstimationError {
    using EstimationError::EstimationError;
};

// Variance quadratic form of the t-statistic is not positive.
struct DegenerateStudentization : EstimationError {
    using EstimationError::EstimationError;
};

// Kernel has no finite integral (constant test kernel).
struct NotIntegrable : Error {
    using Error::Error;
};

// Local Whittle bandwidth m = floor(n^b) outside [4, n/2).
struct BandwidthError : Error {
    using Error::Error;
};

struct IngestError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

}  // namespace ltls
