#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phn/fourier.hpp"
#include "phn/train.hpp"

namespace phn {

inline constexpr const char* kVersion = "0.1.0";

/// %.17g rendering, enough digits to round-trip a double.
std::string format_g17(double value);

/// Columns: epoch, loss, ratio, lr_vqc, lr_mlp. The ratio field is empty for
/// runs that do not track it (single-branch modes).
std::string loss_csv(const TrainRecord& record);

/// Columns: alpha_c, final_loss, final_ratio, diverged.
std::string sweep_csv(const std::vector<SweepPoint>& points);

/// Columns: k, re, im, abs.
std::string spectrum_csv(const FourierSpectrum& spectrum);

/// Columns: x1[, x2], prediction, ground_truth.
std::string predictions_csv(const std::vector<PredictionRow>& rows);

/// Run metadata: resolved config echo, seed, code version, optimizer id and
/// wall time, plus any command-specific extras merged in by the caller.
nlohmann::json run_metadata(const nlohmann::json& config_echo,
                            std::uint64_t seed, double wall_seconds);

void write_text_file(const std::string& path, const std::string& content);

/// Creates the run directory. When it already holds files, refuses unless
/// `overwrite` is set.
void prepare_run_directory(const std::string& dir, bool overwrite);

} // namespace phn
