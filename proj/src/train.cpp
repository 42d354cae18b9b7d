#include "phn/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace phn {

void TrainConfig::validate() const {
    if (epochs < 1) {
        throw std::invalid_argument("TrainConfig: epochs must be >= 1");
    }
    if (lrs.vqc < 0.0 || lrs.mlp < 0.0 || lrs.combiner < 0.0) {
        throw std::invalid_argument(
            "TrainConfig: learning rates must be non-negative");
    }
    if (dataset_id != "1d" && dataset_id != "2d") {
        throw std::invalid_argument("TrainConfig: dataset must be 1d or 2d");
    }
    if (schedule.has_value()) {
        if (schedule->gamma <= 0.0 || schedule->gamma > 1.0) {
            throw std::invalid_argument(
                "TrainConfig: schedule gamma must be in (0, 1]");
        }
        if (schedule->step_every < 1) {
            throw std::invalid_argument(
                "TrainConfig: schedule step must be >= 1");
        }
    }
}

double TrainRecord::final_loss() const {
    return loss_trace.empty() ? initial_loss : loss_trace.back();
}

double evaluate(const PhnModel& model, const Dataset& dataset) {
    if (dataset.size() == 0) {
        throw std::invalid_argument("evaluate: empty dataset");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const std::vector<double> out =
            phn_forward(model, dataset.features[i]);
        for (double o : out) {
            const double err = o - dataset.labels[i];
            total += err * err;
        }
    }
    return total / static_cast<double>(dataset.size());
}

TrainRecord train(const TrainConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();

    const Dataset dataset = make_dataset(config.dataset_id, config.samples,
                                         config.domain_lo, config.domain_hi);
    PhnModel model = build_reference_architecture(
        config.dataset_id == "1d" ? ReferenceExperiment::OneD
                                  : ReferenceExperiment::TwoD,
        config.seed);
    model.mode = config.mode;

    TrainRecord record;
    record.config = config;
    record.initial_loss = evaluate(model, dataset);

    const LrSchedule schedule{
        config.lrs,
        config.schedule ? config.schedule->gamma : 1.0,
        config.schedule ? config.schedule->step_every : 1,
    };
    const std::vector<ParamGroup> groups = parameter_groups(model);
    std::vector<double> params = flatten_parameters(model);
    AdamState adam = AdamState::for_size(params.size());
    const bool track_ratio =
        config.mode == PhnMode::Full && model.num_outputs() == 1;
    const double inv_n = 1.0 / static_cast<double>(dataset.size());

    std::vector<double> batch_grad(params.size());
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const GroupLearningRates lrs = scheduled_lr(schedule, epoch);

        std::fill(batch_grad.begin(), batch_grad.end(), 0.0);
        bool finite = true;
        for (std::size_t i = 0; i < dataset.size() && finite; ++i) {
            const PhnGradient g = phn_gradients(
                model, dataset.features[i],
                std::span<const double>(&dataset.labels[i], 1));
            finite = std::isfinite(g.loss);
            for (std::size_t j = 0; j < params.size(); ++j) {
                batch_grad[j] += inv_n * g.grads[j];
            }
        }
        if (finite) {
            finite = std::all_of(batch_grad.begin(), batch_grad.end(),
                                 [](double g) { return std::isfinite(g); });
        }
        if (!finite) {
            record.diverged = true;
            record.diverged_epoch = epoch;
            break;
        }

        adam_step(adam, params, batch_grad, groups, lrs);
        assign_parameters(model, params);

        const double loss = evaluate(model, dataset);
        record.loss_trace.push_back(loss);
        record.lr_trace.push_back(lrs);
        if (track_ratio) {
            record.ratio_trace.push_back(primacy_ratio(model));
        }
        if (!std::isfinite(loss)) {
            record.diverged = true;
            record.diverged_epoch = epoch;
            break;
        }
    }

    record.final_model = std::move(model);
    record.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return record;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> grid;
    grid.reserve(54);
    for (int decade = -7; decade <= -2; ++decade) {
        for (int mantissa = 1; mantissa <= 9; ++mantissa) {
            grid.push_back(mantissa * std::pow(10.0, decade));
        }
    }
    return grid;
}

std::vector<SweepPoint>
sweep_primacy(const std::vector<double>& alpha_c_values,
              const TrainConfig& base_config) {
    std::vector<double> alphas = alpha_c_values;
    std::sort(alphas.begin(), alphas.end());

    std::vector<SweepPoint> points;
    points.reserve(alphas.size());
    for (double alpha_c : alphas) {
        TrainConfig config = base_config;
        config.mode = PhnMode::Full;
        config.lrs.mlp = alpha_c;
        // The combiner sits on the classical side of the graph and trains
        // at the MLP rate.
        config.lrs.combiner = alpha_c;
        const TrainRecord record = train(config);

        SweepPoint point;
        point.alpha_c = alpha_c;
        point.final_loss = record.final_loss();
        point.final_ratio =
            record.ratio_trace.empty() ? primacy_ratio(record.final_model)
                                       : record.ratio_trace.back();
        point.diverged = record.diverged ||
                         !std::isfinite(point.final_loss) ||
                         !(point.final_loss < record.initial_loss);
        points.push_back(point);
    }
    return points;
}

std::vector<PredictionRow> prediction_rows(const PhnModel& model,
                                           const Dataset& dataset) {
    std::vector<PredictionRow> rows;
    rows.reserve(dataset.size());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        PredictionRow row;
        row.features = dataset.features[i];
        row.prediction = phn_forward(model, dataset.features[i])[0];
        row.ground_truth = dataset.labels[i];
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace phn
