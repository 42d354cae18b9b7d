// phn — command-line front end for the parallel hybrid network library.
//
// Subcommands: dataset, train, sweep, fourier, eval. Each experiment command
// reads a flat JSON config (strictly validated), applies any flag overrides,
// runs, and writes its outputs into a run directory together with run.json,
// which echoes the fully resolved configuration so the run can be repeated
// bit-identically.
//
// Exit codes: 0 success, 1 usage/config error, 2 training diverged (partial
// results persisted).

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phn/config.hpp"
#include "phn/datasets.hpp"
#include "phn/fourier.hpp"
#include "phn/phn.hpp"
#include "phn/results.hpp"
#include "phn/serialize.hpp"
#include "phn/train.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitDiverged = 2;

/// Root for relative and defaulted output paths. Falls back to the current
/// directory when PHN_RESULTS_ROOT is unset.
std::filesystem::path results_root() {
    if (const char* root = std::getenv("PHN_RESULTS_ROOT")) {
        if (*root != '\0') {
            return root;
        }
    }
    return ".";
}

std::string resolve_out(const std::string& out, const std::string& fallback) {
    std::filesystem::path path = out.empty() ? fallback : out;
    if (path.is_relative()) {
        path = results_root() / path;
    }
    return path.string();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config " + path);
    }
    json doc;
    in >> doc;
    return doc;
}

/// Flag overrides for the experiment configs: each one re-sets the matching
/// config key, so the strict parser still sees a single flat document.
struct Overrides {
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
    std::optional<int> epochs;
    bool overwrite = false;
};

void add_common_flags(CLI::App* cmd, std::string& config_path,
                      Overrides& overrides, bool config_required) {
    CLI::Option* config =
        cmd->add_option("-c,--config", config_path, "Experiment config JSON");
    config->check(CLI::ExistingFile);
    if (config_required) {
        config->required();
    }
    cmd->add_option("-o,--out", overrides.out,
                    "Run directory (relative paths resolve under "
                    "PHN_RESULTS_ROOT)");
    cmd->add_flag("--overwrite", overrides.overwrite,
                  "Allow writing into a non-empty run directory");
}

void write_run_json(const phn::ExperimentConfig& config, double wall_seconds,
                    const json& extras) {
    json doc = phn::run_metadata(phn::experiment_config_to_json(config),
                                 config.train.seed, wall_seconds);
    doc.update(extras);
    phn::write_text_file(config.out + "/run.json", doc.dump(2) + "\n");
}

int run_train(const phn::ExperimentConfig& config) {
    const phn::TrainRecord record = phn::train(config.train);

    phn::write_text_file(config.out + "/loss.csv", phn::loss_csv(record));
    phn::save_checkpoint(config.out + "/checkpoint.json", record.final_model,
                         config.train.seed);
    const phn::Dataset dataset =
        phn::make_dataset(config.train.dataset_id, config.train.samples,
                          config.train.domain_lo, config.train.domain_hi);
    phn::write_text_file(
        config.out + "/predictions.csv",
        phn::predictions_csv(phn::prediction_rows(record.final_model,
                                                  dataset)));

    json extras{{"initial_loss", record.initial_loss},
                {"final_loss", record.final_loss()},
                {"epochs_run", record.loss_trace.size()},
                {"diverged", record.diverged}};
    if (record.diverged) {
        extras["diverged_epoch"] = record.diverged_epoch;
    }
    write_run_json(config, record.wall_seconds, extras);

    std::cout << "final_loss=" << phn::format_g17(record.final_loss())
              << " epochs=" << record.loss_trace.size() << " -> " << config.out
              << "\n";
    if (record.diverged) {
        std::cerr << "training diverged at epoch " << record.diverged_epoch
                  << "; partial results kept\n";
        return kExitDiverged;
    }
    return kExitOk;
}

int run_sweep(const phn::ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<phn::SweepPoint> points =
        phn::sweep_primacy(config.alpha_c_values, config.train);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    phn::write_text_file(config.out + "/sweep.csv", phn::sweep_csv(points));

    const phn::SweepPoint* best = nullptr;
    for (const phn::SweepPoint& point : points) {
        if (!point.diverged && (!best || point.final_loss < best->final_loss)) {
            best = &point;
        }
    }
    json extras{{"points", points.size()}};
    if (best) {
        extras["best_alpha_c"] = best->alpha_c;
        extras["best_final_loss"] = best->final_loss;
        extras["best_final_ratio"] = best->final_ratio;
    }
    write_run_json(config, wall, extras);

    std::cout << points.size() << " sweep points -> " << config.out << "\n";
    if (best) {
        std::cout << "best alpha_c=" << phn::format_g17(best->alpha_c)
                  << " loss=" << phn::format_g17(best->final_loss)
                  << " ratio=" << phn::format_g17(best->final_ratio) << "\n";
    }
    return kExitOk;
}

int run_fourier(const phn::ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const phn::PhnModel model = phn::load_checkpoint(config.checkpoint);
    if (model.num_features() != 1) {
        throw std::invalid_argument(
            "fourier: checkpoint is not a 1-feature model");
    }

    std::function<double(double)> curve;
    if (config.branch == "vqc") {
        curve = [&model](double x) {
            const std::vector<double> features{x};
            return phn::run_circuit(model.vqc, model.vqc_theta, features)[0];
        };
    } else if (config.branch == "mlp") {
        curve = [&model](double x) {
            const std::vector<double> features{x};
            return phn::mlp_forward(model.mlp, features).output[0];
        };
    } else {
        curve = [&model](double x) {
            const std::vector<double> features{x};
            return phn::phn_forward(model, features)[0];
        };
    }
    const phn::FourierSpectrum spectrum =
        phn::fourier_spectrum(curve, config.grid_size, config.l_max);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    phn::write_text_file(config.out + "/spectrum.csv",
                         phn::spectrum_csv(spectrum));
    write_run_json(config, wall,
                   {{"inferred_degree", spectrum.inferred_degree},
                    {"branch", config.branch}});

    std::cout << "inferred_degree=" << spectrum.inferred_degree << " -> "
              << config.out << "\n";
    return kExitOk;
}

int run_eval(const phn::ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const phn::PhnModel model = phn::load_checkpoint(config.checkpoint);
    const std::string kind = model.num_features() == 2 ? "2d" : "1d";
    const phn::Dataset dataset =
        phn::make_dataset(kind, config.eval_samples, config.train.domain_lo,
                          config.train.domain_hi);
    const double mse = phn::evaluate(model, dataset);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    phn::write_text_file(
        config.out + "/predictions.csv",
        phn::predictions_csv(phn::prediction_rows(model, dataset)));
    write_run_json(config, wall, {{"mse", mse}, {"samples", dataset.size()}});

    std::cout << "mse=" << phn::format_g17(mse) << " samples="
              << dataset.size() << " -> " << config.out << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Parallel hybrid network: datasets, training, sweeps and "
                 "Fourier analysis"};
    app.require_subcommand(1);

    // dataset: plain flags, writes a single CSV file.
    auto* dataset_cmd =
        app.add_subcommand("dataset", "Generate a ground-truth dataset CSV");
    std::string ds_kind = "1d";
    std::size_t ds_n = 100;
    double ds_lo = 0.0;
    double ds_hi = 2.0 * M_PI;
    std::string ds_out;
    bool ds_overwrite = false;
    dataset_cmd->add_option("--kind", ds_kind, "Ground truth: 1d or 2d")
        ->check(CLI::IsMember({"1d", "2d"}));
    dataset_cmd->add_option("--n", ds_n,
                            "Sample count (perfect square for 2d)");
    dataset_cmd->add_option("--lo", ds_lo, "Domain lower bound (radians)");
    dataset_cmd->add_option("--hi", ds_hi,
                            "Domain upper bound (excluded, radians)");
    dataset_cmd->add_option("--out", ds_out,
                            "Output CSV path (default dataset.csv under "
                            "PHN_RESULTS_ROOT)");
    dataset_cmd->add_flag("--overwrite", ds_overwrite,
                          "Replace an existing file");

    std::string config_path;
    Overrides overrides;

    auto* train_cmd =
        app.add_subcommand("train", "Train one model and record its run");
    std::string train_dataset = "1d";
    add_common_flags(train_cmd, config_path, overrides, false);
    train_cmd
        ->add_option("--dataset", train_dataset,
                     "Experiment to run without a config: 1d or 2d")
        ->check(CLI::IsMember({"1d", "2d"}))
        ->excludes(train_cmd->get_option("--config"));
    train_cmd->add_option("--seed", overrides.seed, "Initialisation seed");
    train_cmd
        ->add_option("--mode", overrides.mode,
                     "Model mode: full, vqc or mlp")
        ->check(CLI::IsMember({"full", "vqc", "mlp"}));
    train_cmd->add_option("--epochs", overrides.epochs, "Training epochs");

    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Train once per MLP learning rate and tabulate the results");
    add_common_flags(sweep_cmd, config_path, overrides, false);
    sweep_cmd->add_option("--seed", overrides.seed, "Initialisation seed");
    sweep_cmd->add_option("--epochs", overrides.epochs,
                          "Training epochs per point");

    auto* fourier_cmd = app.add_subcommand(
        "fourier", "Fourier spectrum of a checkpointed 1D model");
    std::string checkpoint_flag;
    std::string branch_flag;
    std::optional<int> grid_flag;
    add_common_flags(fourier_cmd, config_path, overrides, false);
    fourier_cmd->add_option("--checkpoint", checkpoint_flag,
                            "Model checkpoint JSON");
    fourier_cmd
        ->add_option("--branch", branch_flag,
                     "Curve to analyze: full, vqc or mlp")
        ->check(CLI::IsMember({"full", "vqc", "mlp"}));
    fourier_cmd->add_option("--grid-size", grid_flag,
                            "DFT grid size (power of two)");

    auto* eval_cmd = app.add_subcommand(
        "eval", "Evaluate a checkpoint on a fresh equispaced grid");
    std::optional<std::size_t> eval_samples_flag;
    add_common_flags(eval_cmd, config_path, overrides, false);
    eval_cmd->add_option("--checkpoint", checkpoint_flag,
                         "Model checkpoint JSON");
    eval_cmd->add_option("--samples", eval_samples_flag,
                         "Grid size (perfect square for 2d)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (dataset_cmd->parsed()) {
            if (ds_n == 0) {
                throw std::invalid_argument("dataset: --n must be positive");
            }
            const phn::Dataset dataset =
                phn::make_dataset(ds_kind, ds_n, ds_lo, ds_hi);
            const std::string path = resolve_out(ds_out, "dataset.csv");
            if (std::filesystem::exists(path) && !ds_overwrite) {
                throw std::invalid_argument(
                    "dataset: " + path + " exists (pass --overwrite)");
            }
            if (const auto parent = std::filesystem::path(path).parent_path();
                !parent.empty()) {
                std::filesystem::create_directories(parent);
            }
            phn::write_text_file(path, phn::dataset_to_csv(dataset));
            std::cout << dataset.size() << " rows -> " << path << "\n";
            return kExitOk;
        }

        std::string default_kind;
        if (train_cmd->parsed()) {
            default_kind = "train-" + train_dataset;
        } else if (sweep_cmd->parsed()) {
            default_kind = "sweep";
        } else if (fourier_cmd->parsed()) {
            default_kind = "fourier";
        } else {
            default_kind = "eval";
        }

        // Checkpoint-command flags routed through the parser. Must start as
        // an object, not null: update(null) throws.
        json flag_doc = json::object();
        if (!checkpoint_flag.empty()) {
            flag_doc["checkpoint"] = checkpoint_flag;
        }
        if (!branch_flag.empty()) {
            flag_doc["branch"] = branch_flag;
        }
        if (grid_flag) {
            flag_doc["grid_size"] = *grid_flag;
        }
        if (eval_samples_flag) {
            flag_doc["samples"] = *eval_samples_flag;
        }

        json doc = config_path.empty() ? json::object()
                                       : load_json_file(config_path);
        doc.update(flag_doc);
        if (!doc.contains("experiment")) {
            doc["experiment"] = default_kind;
        }
        {
            const std::string kind = doc["experiment"].get<std::string>();
            const bool train_ok = train_cmd->parsed() &&
                                  (kind == "train-1d" || kind == "train-2d");
            if (kind != default_kind && !train_ok) {
                throw std::invalid_argument("config is for experiment '" +
                                            kind +
                                            "', not for this subcommand");
            }
        }
        if (overrides.out) {
            doc["out"] = *overrides.out;
        }
        if (overrides.seed) {
            doc["seed"] = *overrides.seed;
        }
        if (overrides.mode) {
            doc["mode"] = *overrides.mode;
        }
        if (overrides.epochs) {
            doc["epochs"] = *overrides.epochs;
        }
        if (overrides.overwrite) {
            doc["overwrite"] = true;
        }
        phn::ExperimentConfig config = phn::parse_experiment_config(doc);
        config.out = resolve_out(config.out, config.experiment);
        phn::prepare_run_directory(config.out, config.overwrite);

        if (train_cmd->parsed()) {
            return run_train(config);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep(config);
        }
        if (fourier_cmd->parsed()) {
            return run_fourier(config);
        }
        return run_eval(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
