#include "phn/datasets.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace phn {

double ground_truth_1d(double x) {
    return std::sin(x) + 0.05 * std::sin(8.0 * x) +
           0.03 * std::sin(16.0 * x) + 0.01 * std::sin(32.0 * x);
}

double ground_truth_2d(double x1, double x2) {
    return std::sin(x1) + std::sin(x2) + 0.8 * std::sin(x1 + x2) +
           0.3 * std::sin(x1 - x2) + 0.09 * std::sin(8.0 * x1 + 4.0 * x2) +
           0.05 * std::sin(16.0 * x1 - 12.0 * x2) +
           0.04 * std::sin(12.0 * x1 + 8.0 * x2);
}

std::vector<std::vector<double>> sample_grid(std::size_t dims,
                                             std::size_t n_total, double lo,
                                             double hi) {
    if (dims != 1 && dims != 2) {
        throw std::invalid_argument("sample_grid: dims must be 1 or 2");
    }
    if (n_total == 0) {
        throw std::invalid_argument("sample_grid: empty grid");
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("sample_grid: domain must be non-empty");
    }

    std::vector<std::vector<double>> points;
    points.reserve(n_total);
    if (dims == 1) {
        const double spacing = (hi - lo) / static_cast<double>(n_total);
        for (std::size_t i = 0; i < n_total; ++i) {
            points.push_back({lo + static_cast<double>(i) * spacing});
        }
        return points;
    }

    const auto side = static_cast<std::size_t>(
        std::llround(std::sqrt(static_cast<double>(n_total))));
    if (side * side != n_total) {
        throw std::invalid_argument(
            "sample_grid: 2D grids need a perfect-square point count");
    }
    const double spacing = (hi - lo) / static_cast<double>(side);
    std::vector<double> axis(side);
    for (std::size_t i = 0; i < side; ++i) {
        axis[i] = lo + static_cast<double>(i) * spacing;
    }
    for (std::size_t i1 = 0; i1 < side; ++i1) {
        for (std::size_t i2 = 0; i2 < side; ++i2) {
            points.push_back({axis[i1], axis[i2]});
        }
    }
    return points;
}

std::pair<std::vector<double>, std::pair<double, double>>
minmax_scale(const std::vector<double>& raw_labels) {
    if (raw_labels.empty()) {
        throw std::invalid_argument("minmax_scale: empty labels");
    }
    double lo = raw_labels.front();
    double hi = raw_labels.front();
    for (double y : raw_labels) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    if (!(hi > lo)) {
        throw std::invalid_argument("minmax_scale: constant labels");
    }
    std::vector<double> scaled;
    scaled.reserve(raw_labels.size());
    const double range = hi - lo;
    for (double y : raw_labels) {
        scaled.push_back(2.0 * (y - lo) / range - 1.0);
    }
    return {std::move(scaled), {lo, hi}};
}

Dataset make_dataset(const std::string& kind, std::size_t n_total, double lo,
                     double hi) {
    Dataset dataset;
    if (kind == "1d") {
        dataset.features = sample_grid(1, n_total, lo, hi);
    } else if (kind == "2d") {
        dataset.features = sample_grid(2, n_total, lo, hi);
    } else {
        throw std::invalid_argument("make_dataset: kind must be 1d or 2d");
    }
    std::vector<double> raw;
    raw.reserve(dataset.features.size());
    for (const std::vector<double>& x : dataset.features) {
        raw.push_back(kind == "1d" ? ground_truth_1d(x[0])
                                   : ground_truth_2d(x[0], x[1]));
    }
    auto [scaled, extremes] = minmax_scale(raw);
    dataset.labels = std::move(scaled);
    dataset.meta = {kind, lo, hi, extremes.first, extremes.second};
    return dataset;
}

namespace {
void append_g17(std::string& out, double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    out += buffer;
}
} // namespace

std::string dataset_to_csv(const Dataset& dataset) {
    std::string csv = dataset.dims() == 2 ? "x1,x2,y\n" : "x1,y\n";
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        for (double x : dataset.features[i]) {
            append_g17(csv, x);
            csv += ',';
        }
        append_g17(csv, dataset.labels[i]);
        csv += '\n';
    }
    return csv;
}

} // namespace phn
