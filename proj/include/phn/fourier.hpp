#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace phn {

/// Truncated Fourier coefficients of a 1D real-valued map on [0, 2pi).
struct FourierSpectrum {
    int l_max = 0;
    int grid_size = 0;
    std::vector<std::complex<double>> coefficients; // k = -l_max .. +l_max
    int inferred_degree = 0; // largest |k| with |c_k| > 1e-8

    const std::complex<double>& c(int k) const;
};

/// DFT of `fn` sampled on grid_size equispaced points of [0, 2pi):
/// c_k = (1/n) sum_j fn(x_j) e^{-i k x_j}. grid_size must be a power of two
/// and at least 4 * l_max. l_max <= 0 selects grid_size / 4.
FourierSpectrum fourier_spectrum(const std::function<double(double)>& fn,
                                 int grid_size, int l_max = 0);

} // namespace phn
