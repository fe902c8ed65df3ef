#pragma once

#include <span>
#include <vector>

namespace ltls {

struct MemoryEstimate {
    enum class Method { LW, ELW };
    double d_hat = 0.0;
    Method method = Method::LW;
    int bandwidth_m = 0;
    double bandwidth_exponent_b = 0.0;
    double objective_at_opt = 0.0;
};

/// Periodogram at Fourier frequencies lambda_j = 2 pi j / n,
/// j = 1..floor((n-1)/2): I_j = |sum_k x_k e^{-i lambda_j k}|^2 / (2 pi n).
std::vector<double> periodogram(std::span<const double> x);

/// O(n^2) direct-DFT periodogram, kept as the reference for the FFT path.
std::vector<double> periodogram_reference(std::span<const double> x);

/// Type-II fractional difference (I-L)^d: y_k = sum_{j<k} pi_j x_{k-j},
/// pi_0 = 1, pi_j = pi_{j-1} (j-1-d)/j. Uses FFT convolution for long series.
std::vector<double> frac_diff(std::span<const double> x, double d);

/// Direct-convolution reference for frac_diff.
std::vector<double> frac_diff_reference(std::span<const double> x, double d);

/// Local Whittle objective at memory d using the m lowest ordinates of a
/// precomputed periodogram (n is the underlying series length).
double lw_objective(std::span<const double> periodogram_vals, std::size_t n, int m, double d);

/// Exact local Whittle objective: periodogram of (I-L)^d (x - x_1).
double elw_objective(std::span<const double> x, int m, double d);

/// d-hat = argmin of the LW objective over [-0.5, 1.5], bandwidth
/// m = floor(n^b); 1/300-step grid refined by golden section to 1e-6.
MemoryEstimate lw_estimate(std::span<const double> x, double b);

/// Exact local Whittle over [-0.5, 2.0]; same optimizer contract.
MemoryEstimate elw_estimate(std::span<const double> x, double b);

}  // namespace ltls
