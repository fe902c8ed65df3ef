#pragma once

#include <vector>

namespace ltls {

/// Kernel used for chronological trimming. The production family is powers
/// of a Gaussian density, K(x) = phi_{var}(x)^power; the constant kernel
/// exists only so tests can collapse the trimmed estimator onto plain OLS.
struct KernelSpec {
    enum class Form { GaussianDensityPower, ConstantOnAll };

    Form form = Form::GaussianDensityPower;
    double variance = 1.0;  // Gaussian variance parameter, > 0
    double power = 1.0;     // exponent p in (0, 1]
    double level = 1.0;     // value of the constant kernel

    static KernelSpec gaussian_power(double variance, double power);
    static KernelSpec constant(double level);
};

double eval_kernel(const KernelSpec& k, double x);

/// Closed-form integrals of K and K^2 for the Gaussian-power family:
///   int phi_{v}^p  = (2 pi v)^((1-p)/2) * p^(-1/2),
/// and the same expression with 2p for the square.
struct KernelIntegrals {
    double int_k = 0.0;
    double int_k2 = 0.0;
};
KernelIntegrals kernel_integrals(const KernelSpec& k);

/// Equispaced chronological points j/(l+1), j = 1..l.
std::vector<double> make_cps(int l);

/// A fully realized trimming configuration: chronological points, the rate
/// value c_n at the current sample size, and the instrument / demeaning
/// kernels. l_star selects between multi-cp demeaning (l_star == l_n, same
/// cps as the instrument) and single-cp demeaning at tau_star (l_star == 1).
struct TrimmingScheme {
    std::vector<double> cps;
    double c_n = 1.0;
    int l_n = 1;
    int l_star = 1;
    double tau_star = 0.5;
    KernelSpec kernel;       // instrument kernel K
    KernelSpec kernel_star;  // demeaning kernel K*
};

struct TrimmingWeights {
    std::vector<double> kkn;       // K_kn,  k = 1..n
    std::vector<double> kstar_kn;  // K*_kn, k = 1..n
};

/// K_kn[k] = sum_j K(c_n (k/n - tau_j)) and the K*_kn counterpart.
/// Throws DegenerateWeights when either vector is identically zero.
TrimmingWeights trimming_weights(const TrimmingScheme& scheme, int n);

}  // namespace ltls
