#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ltls::fft {

/// Forward DFT of a real sequence; returns bins 0..n/2 (FFTW r2c layout).
/// Thread-safe; plans are cached per thread behind a mutex-guarded planner.
std::vector<std::complex<double>> real_dft(std::span<const double> x);

/// First out_len terms of the linear convolution of a and b.
std::vector<double> convolve(std::span<const double> a, std::span<const double> b,
                             std::size_t out_len);

}  // namespace ltls::fft
