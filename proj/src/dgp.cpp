#include "ltls/dgp.hpp"

#include <cmath>
#include <stdexcept>

namespace ltls {

void validate(const DgpSpec& spec) {
    if (!(std::abs(spec.delta) <= 1.0))
        throw std::domain_error("DgpSpec: |delta| must be <= 1");
    if (spec.n < 1) throw std::domain_error("DgpSpec: n must be positive");
    if (const auto* ni = std::get_if<NearIntegrated>(&spec.regressor)) {
        if (ni->c > 0.0) throw std::domain_error("DgpSpec: near-integrated c must be <= 0");
    } else {
        const auto& fr = std::get<FractionalTypeII>(spec.regressor);
        if (!(fr.d > 0.0 && fr.d < 1.5))
            throw std::domain_error("DgpSpec: fractional d must lie in (0, 1.5)");
    }
}

Innovations gen_innovations(double delta, int n, RngStream& stream) {
    if (!(std::abs(delta) <= 1.0))
        throw std::domain_error("gen_innovations: |delta| must be <= 1");
    Innovations out;
    out.xi.resize(static_cast<size_t>(n));
    out.u.resize(static_cast<size_t>(n));
    const double tail = std::sqrt(1.0 - delta * delta);
    for (int k = 0; k < n; ++k) {
        const double xi = stream.normal();
        const double e = stream.normal();
        out.xi[static_cast<size_t>(k)] = xi;
        out.u[static_cast<size_t>(k)] = delta * xi + tail * e;
    }
    return out;
}

std::vector<double> gen_near_integrated(double c, const std::vector<double>& xi) {
    if (c > 0.0) throw std::domain_error("gen_near_integrated: c must be <= 0");
    if (xi.empty()) throw std::domain_error("gen_near_integrated: empty innovation vector");
    const double rho = 1.0 + c / static_cast<double>(xi.size());
    std::vector<double> x(xi.size());
    double prev = 0.0;
    for (size_t k = 0; k < xi.size(); ++k) {
        prev = rho * prev + xi[k];
        x[k] = prev;
    }
    return x;
}

std::vector<double> frac_coeffs(double d, int m) {
    if (m < 0) throw std::domain_error("frac_coeffs: m must be >= 0");
    std::vector<double> psi(static_cast<size_t>(m) + 1);
    psi[0] = 1.0;
    for (int j = 1; j <= m; ++j)
        psi[static_cast<size_t>(j)] = psi[static_cast<size_t>(j - 1)] * (j - 1 + d) / j;
    return psi;
}

std::vector<double> gen_fractional(double d, const std::vector<double>& xi) {
    if (!(d > 0.0 && d < 1.5))
        throw std::domain_error("gen_fractional: d must lie in (0, 1.5)");
    const auto n = xi.size();
    const auto psi = frac_coeffs(d, static_cast<int>(n) - 1);
    std::vector<double> x(n, 0.0);
    for (size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (size_t j = 0; j <= k; ++j) s += psi[j] * xi[k - j];
        x[k] = s;
    }
    return x;
}

SeriesPair gen_series(const DgpSpec& spec, RngStream& stream) {
    validate(spec);
    const auto innov = gen_innovations(spec.delta, spec.n, stream);
    SeriesPair out;
    if (const auto* ni = std::get_if<NearIntegrated>(&spec.regressor))
        out.x = gen_near_integrated(ni->c, innov.xi);
    else
        out.x = gen_fractional(std::get<FractionalTypeII>(spec.regressor).d, innov.xi);

    out.y.resize(static_cast<size_t>(spec.n));
    for (int k = 0; k < spec.n; ++k) {
        const double xlag = k == 0 ? 0.0 : out.x[static_cast<size_t>(k - 1)];
        out.y[static_cast<size_t>(k)] = spec.mu + spec.beta * xlag + innov.u[static_cast<size_t>(k)];
    }
    return out;
}

RegressionFrame make_frame(const SeriesPair& s) {
    if (s.x.size() != s.y.size() || s.x.size() < 2)
        throw std::domain_error("make_frame: need aligned series of length >= 2");
    const auto n = s.x.size();
    RegressionFrame f;
    f.y.assign(s.y.begin() + 1, s.y.end());
    f.fx.assign(s.x.begin(), s.x.end() - 1);
    (void)n;
    return f;
}

}  // namespace ltls
