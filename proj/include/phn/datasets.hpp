#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace phn {

/// sin(x) + 0.05 sin(8x) + 0.03 sin(16x) + 0.01 sin(32x), pre-scaling.
double ground_truth_1d(double x);

/// sin(x1) + sin(x2) + 0.8 sin(x1+x2) + 0.3 sin(x1-x2)
/// + 0.09 sin(8x1+4x2) + 0.05 sin(16x1-12x2) + 0.04 sin(12x1+8x2),
/// pre-scaling.
double ground_truth_2d(double x1, double x2);

/// Equispaced half-open grid. 1D: x_i = lo + i (hi-lo)/n. 2D: the row-major
/// Cartesian product of two such axes with sqrt(n_total) points each
/// (n_total must be a perfect square).
std::vector<std::vector<double>> sample_grid(std::size_t dims,
                                             std::size_t n_total, double lo,
                                             double hi);

/// Affine map y' = 2 (y - min) / (max - min) - 1. Returns the scaled labels
/// and the (min, max) used. Rejects constant labels.
std::pair<std::vector<double>, std::pair<double, double>>
minmax_scale(const std::vector<double>& raw_labels);

struct DatasetMeta {
    std::string ground_truth; // "1d" or "2d"
    double domain_lo = 0.0;
    double domain_hi = 0.0;
    double raw_min = 0.0;
    double raw_max = 0.0;
};

struct Dataset {
    std::vector<std::vector<double>> features; // radians
    std::vector<double> labels;                // scaled to [-1, 1]
    DatasetMeta meta;

    std::size_t size() const { return labels.size(); }
    std::size_t dims() const {
        return features.empty() ? 0 : features.front().size();
    }
};

/// Grid sampling + ground truth + min-max label scaling in one step.
/// `kind` is "1d" or "2d".
Dataset make_dataset(const std::string& kind, std::size_t n_total, double lo,
                     double hi);

/// CSV with header "x1[,x2],y" and 17-significant-digit decimals.
std::string dataset_to_csv(const Dataset& dataset);

} // namespace phn
