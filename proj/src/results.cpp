#include "phn/results.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace phn {

std::string format_g17(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string loss_csv(const TrainRecord& record) {
    std::string csv = "epoch,loss,ratio,lr_vqc,lr_mlp\n";
    for (std::size_t i = 0; i < record.loss_trace.size(); ++i) {
        csv += std::to_string(i);
        csv += ',';
        csv += format_g17(record.loss_trace[i]);
        csv += ',';
        if (i < record.ratio_trace.size()) {
            csv += format_g17(record.ratio_trace[i]);
        }
        csv += ',';
        csv += format_g17(record.lr_trace[i].vqc);
        csv += ',';
        csv += format_g17(record.lr_trace[i].mlp);
        csv += '\n';
    }
    return csv;
}

std::string sweep_csv(const std::vector<SweepPoint>& points) {
    std::string csv = "alpha_c,final_loss,final_ratio,diverged\n";
    for (const SweepPoint& point : points) {
        csv += format_g17(point.alpha_c);
        csv += ',';
        csv += format_g17(point.final_loss);
        csv += ',';
        csv += format_g17(point.final_ratio);
        csv += ',';
        csv += point.diverged ? "1" : "0";
        csv += '\n';
    }
    return csv;
}

std::string spectrum_csv(const FourierSpectrum& spectrum) {
    std::string csv = "k,re,im,abs\n";
    for (int k = -spectrum.l_max; k <= spectrum.l_max; ++k) {
        const std::complex<double>& c = spectrum.c(k);
        csv += std::to_string(k);
        csv += ',';
        csv += format_g17(c.real());
        csv += ',';
        csv += format_g17(c.imag());
        csv += ',';
        csv += format_g17(std::abs(c));
        csv += '\n';
    }
    return csv;
}

std::string predictions_csv(const std::vector<PredictionRow>& rows) {
    if (rows.empty()) {
        return "x1,prediction,ground_truth\n";
    }
    std::string csv =
        rows.front().features.size() == 2 ? "x1,x2,prediction,ground_truth\n"
                                          : "x1,prediction,ground_truth\n";
    for (const PredictionRow& row : rows) {
        for (double x : row.features) {
            csv += format_g17(x);
            csv += ',';
        }
        csv += format_g17(row.prediction);
        csv += ',';
        csv += format_g17(row.ground_truth);
        csv += '\n';
    }
    return csv;
}

nlohmann::json run_metadata(const nlohmann::json& config_echo,
                            std::uint64_t seed, double wall_seconds) {
    return {{"config", config_echo},
            {"seed", seed},
            {"version", kVersion},
            {"optimizer", "adam"},
            {"wall_seconds", wall_seconds}};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
}

void prepare_run_directory(const std::string& dir, bool overwrite) {
    namespace fs = std::filesystem;
    const fs::path path(dir);
    if (fs::exists(path)) {
        if (!fs::is_directory(path)) {
            throw std::runtime_error("output path is not a directory: " + dir);
        }
        if (!fs::is_empty(path) && !overwrite) {
            throw std::runtime_error(
                "output directory is not empty (pass --overwrite): " + dir);
        }
    } else {
        fs::create_directories(path);
    }
}

} // namespace phn
