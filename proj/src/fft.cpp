#include "ltls/fft.hpp"

#include <fftw3.h>

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ltls::fft {

namespace {

// FFTW's planner is not thread-safe; every plan create/destroy goes through
// this lock. Execution of a private plan on its own buffers is safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct R2cPlan {
    std::size_t n = 0;
    double* in = nullptr;
    fftw_complex* out = nullptr;
    fftw_plan plan = nullptr;

    void create(std::size_t size) {
        n = size;
        in = fftw_alloc_real(n);
        out = fftw_alloc_complex(n / 2 + 1);
        std::lock_guard<std::mutex> g(planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw r2c planning failed");
    }
    ~R2cPlan() {
        if (plan) {
            std::lock_guard<std::mutex> g(planner_mutex());
            fftw_destroy_plan(plan);
        }
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

struct C2rPlan {
    std::size_t n = 0;
    fftw_complex* in = nullptr;
    double* out = nullptr;
    fftw_plan plan = nullptr;

    void create(std::size_t size) {
        n = size;
        in = fftw_alloc_complex(n / 2 + 1);
        out = fftw_alloc_real(n);
        std::lock_guard<std::mutex> g(planner_mutex());
        plan = fftw_plan_dft_c2r_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
        if (!plan) throw std::runtime_error("fftw c2r planning failed");
    }
    ~C2rPlan() {
        if (plan) {
            std::lock_guard<std::mutex> g(planner_mutex());
            fftw_destroy_plan(plan);
        }
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

R2cPlan& r2c_for(std::size_t n) {
    thread_local std::map<std::size_t, R2cPlan> cache;
    auto& entry = cache[n];
    if (!entry.plan) entry.create(n);
    return entry;
}

C2rPlan& c2r_for(std::size_t n) {
    thread_local std::map<std::size_t, C2rPlan> cache;
    auto& entry = cache[n];
    if (!entry.plan) entry.create(n);
    return entry;
}

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("real_dft: empty input");
    R2cPlan& p = r2c_for(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) p.in[k] = x[k];
    fftw_execute(p.plan);
    std::vector<std::complex<double>> spec(x.size() / 2 + 1);
    for (std::size_t j = 0; j < spec.size(); ++j) spec[j] = {p.out[j][0], p.out[j][1]};
    return spec;
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                             std::size_t out_len) {
    if (a.empty() || b.empty()) throw std::invalid_argument("convolve: empty input");
    const std::size_t full = a.size() + b.size() - 1;
    if (out_len > full) throw std::invalid_argument("convolve: out_len too large");
    const std::size_t pad = std::bit_ceil(full);

    R2cPlan& fp = r2c_for(pad);
    const std::size_t nbins = pad / 2 + 1;
    std::vector<std::complex<double>> fa(nbins), fb(nbins);

    for (std::size_t k = 0; k < pad; ++k) fp.in[k] = k < a.size() ? a[k] : 0.0;
    fftw_execute(fp.plan);
    for (std::size_t j = 0; j < nbins; ++j) fa[j] = {fp.out[j][0], fp.out[j][1]};

    for (std::size_t k = 0; k < pad; ++k) fp.in[k] = k < b.size() ? b[k] : 0.0;
    fftw_execute(fp.plan);
    for (std::size_t j = 0; j < nbins; ++j) fb[j] = {fp.out[j][0], fp.out[j][1]};

    C2rPlan& bp = c2r_for(pad);
    for (std::size_t j = 0; j < nbins; ++j) {
        const std::complex<double> prod = fa[j] * fb[j];
        bp.in[j][0] = prod.real();
        bp.in[j][1] = prod.imag();
    }
    fftw_execute(bp.plan);

    std::vector<double> out(out_len);
    const double scale = 1.0 / static_cast<double>(pad);
    for (std::size_t k = 0; k < out_len; ++k) out[k] = bp.out[k] * scale;
    return out;
}

}  // namespace ltls::fft
