#pragma once

#include <span>
#include <vector>

#include "ltls/kernels.hpp"

namespace ltls {

/// Which intercept-correction row enters the studentization of the
/// t-statistic. standard_A pairs the instrument weights with the demeaning
/// weights; star_A replaces the instrument sum by the demeaning sum (used by
/// setup S3, where it deliberately under-weights the intercept term).
enum class Studentization { standard_A, star_A };

/// Inputs for one trimmed-LS fit: response, transformed regressor f(x_k)
/// (identity f in every shipped configuration), realized trimming scheme and
/// the null value beta0 for the t-statistic.
struct RegressionInput {
    std::vector<double> y;
    std::vector<double> fx;
    TrimmingScheme scheme;
    double beta0 = 0.0;
};

struct EstimationResult {
    double beta_hat = 0.0;
    double t_stat = 0.0;
    bool has_t = false;

    double c_stat = 0.0;     // C_n = sum Z_kn fbar_k (t-statistic scale)
    double numerator = 0.0;  // sum Z_kn ybar_k
    double a_row[2] = {1.0, 0.0};
    double v11 = 0.0, v12 = 0.0, v22 = 0.0;
    double sigma_tilde2 = 0.0;
    double delta_tilde = 0.0;  // filled by run_setup; NaN when not derived

    TrimmingScheme scheme_used;
    Studentization variant = Studentization::standard_A;
};

/// Weighted mean sum(a_k w_k) / sum(w_k); throws DegenerateWeights when the
/// weights sum to zero.
double trimmed_mean(std::span<const double> a, std::span<const double> w);

/// Point estimate only: Z_kn = f(x_k) K_kn, demeaning through the K*_kn
/// trimmed mean, slope = sum(Z ybar) / sum(Z fbar).
EstimationResult ltls_estimate(const RegressionInput& input);

/// Point estimate plus the studentized statistic
///   T = C_n (beta_hat - beta0) / sqrt(sigma2 * A V A'),
/// with A = [1, -sum(f K)/sum(K*)] (or the star variant), V the 2x2 matrix of
/// weight cross-moments, and sigma2 the mean squared OLS residual of y on x.
EstimationResult ltls_tstat(const RegressionInput& input, Studentization variant);

/// Residual statistics from the two preliminary OLS regressions (predictive
/// and AR(1)); they feed the data-driven tuning rules and the studentization.
struct PrelimStats {
    double sigma2_u = 0.0;
    double sigma2_xi = 0.0;
    double delta_tilde = 0.0;
    bool degenerate = false;  // zero-variance residuals; delta_tilde forced to 0
    std::vector<double> residuals_u;
    std::vector<double> residuals_xi;
};

/// Pair-level core. Y/X are the aligned regression pairs; x_series is the
/// raw regressor series for the AR(1) regression; horizon_m is the response
/// lead, so the residual of pair i is matched with the AR innovation at
/// series time i+m+1.
PrelimStats prelim_stats_frame(std::span<const double> y_pairs, std::span<const double> x_pairs,
                               std::span<const double> x_series, int horizon_m);

/// Convention for aligned series (y[k] pairs x[k-1]): fits
/// y_{k+1} = mu + b x_k + u_{k+1} and x_k = mu_x + rho x_{k-1} + xi_k,
/// correlating residuals over the common index range k = 2..n.
PrelimStats preliminary_ols(const std::vector<double>& y_series,
                            const std::vector<double>& x_series);

enum class Setup { S1, S2, S3 };

/// Identifies a tuning configuration; Custom carries an explicit scheme.
struct SetupId {
    enum class Kind { S1, S2, S3, Custom };
    Kind kind = Kind::S1;
    TrimmingScheme custom_scheme;
    Studentization custom_variant = Studentization::standard_A;
    /// Scale the S1/S2 kernel variances by the preliminary residual variance
    /// (the convention used for real-data predictive regressions).
    bool empirical_kernels = false;

    static SetupId of(Setup s, bool empirical = false);
};

struct ResolvedSetup {
    TrimmingScheme scheme;
    Studentization variant = Studentization::standard_A;
};

/// Realizes the tuning rules at sample size n:
///   S1: K = phi_{0.1}^{1/2}, K* = phi_1^{1/2}, c = n^0.95, l = floor(c^0.7),
///       multi-cp demeaning.
///   S2: as S1 with l = floor(c^alpha), alpha = 1 - 0.45 |delta~|.
///   S3: K = phi_{s2}, K* = phi_{s2}^{1/2} with s2 = sigma2_u (0.1+0.9|delta~|),
///       c = n^(-0.1+0.15|delta~|), l = floor(log n), single cp at 0.5,
///       star_A studentization.
/// l is clamped to >= 1. With empirical_kernels the S1/S2 variances become
/// 0.1*sigma2_u and sigma2_u.
ResolvedSetup resolve_setup(const SetupId& id, int n, const PrelimStats& prelim);

/// End-to-end run of one setup on a regression frame: preliminary stats,
/// tuning resolution, then the studentized fit.
EstimationResult run_setup(std::span<const double> y_pairs, std::span<const double> x_pairs,
                           std::span<const double> x_series, int horizon_m, const SetupId& id,
                           double beta0);

}  // namespace ltls
