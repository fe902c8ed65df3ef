#include "ltls/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ltls/errors.hpp"

namespace ltls {

KernelSpec KernelSpec::gaussian_power(double variance, double power) {
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw std::domain_error("KernelSpec: Gaussian variance must be positive");
    if (!(power > 0.0 && power <= 1.0))
        throw std::domain_error("KernelSpec: power must lie in (0, 1]");
    KernelSpec k;
    k.form = Form::GaussianDensityPower;
    k.variance = variance;
    k.power = power;
    return k;
}

KernelSpec KernelSpec::constant(double level) {
    if (!(level > 0.0)) throw std::domain_error("KernelSpec: constant level must be positive");
    KernelSpec k;
    k.form = Form::ConstantOnAll;
    k.level = level;
    return k;
}

double eval_kernel(const KernelSpec& k, double x) {
    if (!std::isfinite(x)) throw std::domain_error("eval_kernel: non-finite argument");
    if (k.form == KernelSpec::Form::ConstantOnAll) return k.level;
    // phi_v(x)^p written in exp form so far-tail evaluations underflow to
    // an exact 0.0 (relied upon by the windowed weight loop below).
    const double pref = std::pow(2.0 * M_PI * k.variance, -0.5 * k.power);
    return pref * std::exp(-k.power * x * x / (2.0 * k.variance));
}

KernelIntegrals kernel_integrals(const KernelSpec& k) {
    if (k.form == KernelSpec::Form::ConstantOnAll)
        throw NotIntegrable("kernel_integrals: constant kernel is not integrable");
    const double v = k.variance, p = k.power;
    KernelIntegrals out;
    out.int_k = std::pow(2.0 * M_PI * v, 0.5 * (1.0 - p)) / std::sqrt(p);
    out.int_k2 = std::pow(2.0 * M_PI * v, 0.5 * (1.0 - 2.0 * p)) / std::sqrt(2.0 * p);
    return out;
}

std::vector<double> make_cps(int l) {
    if (l < 1) throw std::domain_error("make_cps: need at least one chronological point");
    std::vector<double> cps(static_cast<size_t>(l));
    for (int j = 1; j <= l; ++j) cps[static_cast<size_t>(j - 1)] = static_cast<double>(j) / (l + 1);
    return cps;
}

namespace {

// |x| beyond this evaluates to an exact 0.0 for the Gaussian-power kernel
// (exp argument below -760 underflows), so terms outside the window can be
// skipped without changing the sum bit-for-bit.
double zero_cutoff(const KernelSpec& k) {
    if (k.form == KernelSpec::Form::ConstantOnAll) return std::numeric_limits<double>::infinity();
    return std::sqrt(1520.0 * k.variance / k.power);
}

// Accumulates sum_j K(c (t - tau_j)) over equispaced cps tau_j = j/(l+1).
double cp_sum(const KernelSpec& k, const std::vector<double>& cps, double c, double t,
              double cutoff) {
    const int l = static_cast<int>(cps.size());
    int j_lo = 1, j_hi = l;
    if (std::isfinite(cutoff) && cutoff / c < 1.0) {
        const double center = (l + 1) * t;
        const double halfwidth = (l + 1) * cutoff / c + 2.0;
        j_lo = std::max(1, static_cast<int>(std::ceil(center - halfwidth)));
        j_hi = std::min(l, static_cast<int>(std::floor(center + halfwidth)));
    }
    double s = 0.0;
    for (int j = j_lo; j <= j_hi; ++j)
        s += eval_kernel(k, c * (t - cps[static_cast<size_t>(j - 1)]));
    return s;
}

}  // namespace

TrimmingWeights trimming_weights(const TrimmingScheme& scheme, int n) {
    if (n < 2) throw std::domain_error("trimming_weights: n must be >= 2");
    if (scheme.l_n < 1 || static_cast<int>(scheme.cps.size()) != scheme.l_n)
        throw std::domain_error("trimming_weights: cps/l_n mismatch");
    if (!(scheme.c_n > 0.0)) throw std::domain_error("trimming_weights: c_n must be positive");
    if (scheme.l_star != 1 && scheme.l_star != scheme.l_n)
        throw std::domain_error("trimming_weights: l_star must be 1 or l_n");

    TrimmingWeights w;
    w.kkn.resize(static_cast<size_t>(n));
    w.kstar_kn.resize(static_cast<size_t>(n));

    const double cut = zero_cutoff(scheme.kernel);
    const double cut_star = zero_cutoff(scheme.kernel_star);
    const bool multi_star = scheme.l_star == scheme.l_n;

    for (int k = 1; k <= n; ++k) {
        const double t = static_cast<double>(k) / n;
        w.kkn[static_cast<size_t>(k - 1)] = cp_sum(scheme.kernel, scheme.cps, scheme.c_n, t, cut);
        w.kstar_kn[static_cast<size_t>(k - 1)] =
            multi_star ? cp_sum(scheme.kernel_star, scheme.cps, scheme.c_n, t, cut_star)
                       : eval_kernel(scheme.kernel_star, scheme.c_n * (t - scheme.tau_star));
    }

    auto all_zero = [](const std::vector<double>& v) {
        return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
    };
    if (all_zero(w.kkn)) throw DegenerateWeights("trimming_weights: instrument weights all zero");
    if (all_zero(w.kstar_kn))
        throw DegenerateWeights("trimming_weights: demeaning weights all zero");
    return w;
}

}  // namespace ltls
