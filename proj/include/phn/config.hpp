#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "phn/train.hpp"

namespace phn {

/// One experiment, fully resolved: a flat JSON document (strict: unknown or
/// mistyped keys are rejected) over per-kind defaults that reproduce the
/// bundled studies.
struct ExperimentConfig {
    std::string experiment; // train-1d | train-2d | sweep | fourier | eval
                            // | dataset
    TrainConfig train;      // train-* and sweep (base run)

    std::vector<double> alpha_c_values; // sweep
    std::string checkpoint;             // fourier / eval
    std::string branch = "full";        // fourier: full | vqc | mlp
    int grid_size = 64;                 // fourier
    int l_max = 0;                      // fourier; 0 selects grid_size / 4

    std::string dataset_kind = "1d"; // dataset
    std::size_t eval_samples = 10000;

    std::string out;
    bool overwrite = false;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);

/// The resolved configuration, every default made explicit; embedded in
/// run.json so a run can be reproduced bit-identically.
nlohmann::json experiment_config_to_json(const ExperimentConfig& config);

} // namespace phn
