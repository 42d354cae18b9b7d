#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phn/datasets.hpp"
#include "phn/optim.hpp"
#include "phn/phn.hpp"

namespace phn {

struct StepDecay {
    double gamma = 0.99;
    int step_every = 10;
};

struct TrainConfig {
    PhnMode mode = PhnMode::Full;
    int epochs = 1000;
    GroupLearningRates lrs{0.01, 0.001, 0.001};
    std::optional<StepDecay> schedule; // absent = constant rates
    std::uint64_t seed = 1;
    std::string dataset_id = "1d"; // "1d" or "2d"
    std::size_t samples = 100;
    double domain_lo = 0.0;
    double domain_hi = 6.283185307179586476925286766559; // 2 pi

    void validate() const;
};

/// Outcome of one full-batch training run. Losses and ratios are recorded
/// after each epoch's update; a run that hits a non-finite loss stops early
/// with `diverged` set and partial traces kept.
struct TrainRecord {
    TrainConfig config;
    std::vector<double> loss_trace;
    std::vector<double> ratio_trace; // Full mode with one output only
    std::vector<GroupLearningRates> lr_trace;
    double initial_loss = 0.0;
    PhnModel final_model;
    bool diverged = false;
    int diverged_epoch = -1;
    double wall_seconds = 0.0;

    double final_loss() const;
};

/// Mean over the dataset of the per-sample squared error
/// sum_m (o_m - y_m)^2.
double evaluate(const PhnModel& model, const Dataset& dataset);

/// Full-batch Adam training of the reference architecture selected by
/// config.dataset_id, deterministic for a fixed seed.
TrainRecord train(const TrainConfig& config);

struct SweepPoint {
    double alpha_c = 0.0;
    double final_loss = 0.0;
    double final_ratio = 0.0;
    bool diverged = false;
};

/// The 54-point learning-rate grid {1..9} x 10^{-7..-2}, ascending.
std::vector<double> default_alpha_grid();

/// One training run per MLP learning rate, all from the same initialisation
/// (base config's seed). The circuit rate stays at base.lrs.vqc; the
/// combiner trains at alpha_c. A point is flagged diverged when its final
/// loss is non-finite or not below its initial loss.
std::vector<SweepPoint> sweep_primacy(const std::vector<double>& alpha_c_values,
                                      const TrainConfig& base_config);

struct PredictionRow {
    std::vector<double> features;
    double prediction = 0.0;
    double ground_truth = 0.0;
};

/// One row per dataset point, in dataset (row-major) order. Works on
/// untrained models too.
std::vector<PredictionRow> prediction_rows(const PhnModel& model,
                                           const Dataset& dataset);

} // namespace phn
