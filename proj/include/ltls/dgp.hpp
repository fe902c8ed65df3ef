#pragma once

#include <variant>
#include <vector>

#include "ltls/rng.hpp"

namespace ltls {

/// Near-integrated AR(1): x_k = (1 + c/n) x_{k-1} + xi_k, c <= 0, x_0 = 0.
struct NearIntegrated {
    double c = 0.0;
};

/// Type-II fractional process: (1-L)^d x_k = xi_k 1{k>=1}, d in (0, 1.5).
struct FractionalTypeII {
    double d = 1.0;
};

using RegressorLaw = std::variant<NearIntegrated, FractionalTypeII>;

/// Predictive-regression data generating process. The innovation pair
/// (xi_k, u_k) is bivariate standard normal with correlation delta; the
/// response is y_{k+1} = mu + beta x_k + u_{k+1}.
struct DgpSpec {
    double delta = 0.0;
    RegressorLaw regressor = NearIntegrated{0.0};
    double beta = 0.0;
    double mu = 0.0;
    int n = 250;
};

void validate(const DgpSpec& spec);

/// Aligned simulated series: y[k] pairs with x[k-1] (x_0 = 0), both length n.
struct SeriesPair {
    std::vector<double> x;
    std::vector<double> y;
};

struct Innovations {
    std::vector<double> xi;
    std::vector<double> u;
};

/// Draws (xi_k, u_k) i.i.d. bivariate normal, unit variances, correlation
/// delta, as u = delta xi + sqrt(1-delta^2) e. Per index the stream is
/// consumed in the order (xi, e).
Innovations gen_innovations(double delta, int n, RngStream& stream);

std::vector<double> gen_near_integrated(double c, const std::vector<double>& xi);

/// MA coefficients of (1-L)^{-d} up to lag m: psi_0 = 1,
/// psi_j = psi_{j-1} (j-1+d)/j.
std::vector<double> frac_coeffs(double d, int m);

/// x_k = sum_{j<k} psi_j xi_{k-j} by direct convolution (type-II, zero
/// pre-sample).
std::vector<double> gen_fractional(double d, const std::vector<double>& xi);

SeriesPair gen_series(const DgpSpec& spec, RngStream& stream);

/// Regression sample extracted from a SeriesPair: response y[k+1] on
/// regressor x[k], k = 1..n-1, dropping the x_0 = 0 pair.
struct RegressionFrame {
    std::vector<double> y;   // y_{k+1}
    std::vector<double> fx;  // x_k
};
RegressionFrame make_frame(const SeriesPair& s);

}  // namespace ltls
