#include "phn/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace phn {

const std::complex<double>& FourierSpectrum::c(int k) const {
    if (k < -l_max || k > l_max) {
        throw std::out_of_range("FourierSpectrum: k outside [-l_max, l_max]");
    }
    return coefficients[static_cast<std::size_t>(k + l_max)];
}

FourierSpectrum fourier_spectrum(const std::function<double(double)>& fn,
                                 int grid_size, int l_max) {
    if (grid_size < 4 || (grid_size & (grid_size - 1)) != 0) {
        throw std::invalid_argument(
            "fourier_spectrum: grid_size must be a power of two >= 4");
    }
    if (l_max <= 0) {
        l_max = grid_size / 4;
    }
    if (grid_size < 4 * l_max) {
        throw std::invalid_argument(
            "fourier_spectrum: grid_size must be >= 4 * l_max");
    }

    const double step = 2.0 * std::numbers::pi / grid_size;
    std::vector<double> samples(static_cast<std::size_t>(grid_size));
    for (int j = 0; j < grid_size; ++j) {
        samples[static_cast<std::size_t>(j)] = fn(j * step);
    }

    FourierSpectrum spectrum;
    spectrum.l_max = l_max;
    spectrum.grid_size = grid_size;
    spectrum.coefficients.reserve(static_cast<std::size_t>(2 * l_max + 1));
    for (int k = -l_max; k <= l_max; ++k) {
        std::complex<double> sum(0.0, 0.0);
        for (int j = 0; j < grid_size; ++j) {
            const double phase = -k * j * step;
            sum += samples[static_cast<std::size_t>(j)] *
                   std::complex<double>(std::cos(phase), std::sin(phase));
        }
        spectrum.coefficients.push_back(sum / static_cast<double>(grid_size));
    }
    for (int k = -l_max; k <= l_max; ++k) {
        if (std::abs(spectrum.c(k)) > 1e-8) {
            spectrum.inferred_degree =
                std::max(spectrum.inferred_degree, std::abs(k));
        }
    }
    return spectrum;
}

} // namespace phn
