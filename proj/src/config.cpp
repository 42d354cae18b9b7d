#include "phn/config.hpp"

#include <fstream>
#include <set>
#include <stdexcept>

namespace phn {

using nlohmann::json;

namespace {

const std::set<std::string> kKinds{"train-1d", "train-2d", "sweep",
                                   "fourier",  "eval",     "dataset"};

std::set<std::string> allowed_keys(const std::string& kind) {
    std::set<std::string> keys{"experiment", "out", "seed", "overwrite"};
    if (kind == "train-1d" || kind == "train-2d") {
        keys.insert({"mode", "epochs", "lr_vqc", "lr_mlp", "lr_combiner",
                     "gamma", "gamma_every", "samples", "domain_lo",
                     "domain_hi"});
    } else if (kind == "sweep") {
        keys.insert({"epochs", "lr_vqc", "alpha_c_values", "samples",
                     "domain_lo", "domain_hi"});
    } else if (kind == "fourier") {
        keys.insert({"checkpoint", "branch", "grid_size", "l_max"});
    } else if (kind == "eval") {
        keys.insert({"checkpoint", "samples", "domain_lo", "domain_hi"});
    } else if (kind == "dataset") {
        keys.insert({"dataset", "samples", "domain_lo", "domain_hi"});
    }
    return keys;
}

template <typename T>
T get_key(const json& doc, const std::string& key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw std::invalid_argument("config: bad value for key '" + key + "'");
    }
}

} // namespace

ExperimentConfig parse_experiment_config(const json& doc) {
    if (!doc.is_object()) {
        throw std::invalid_argument("config: document must be a JSON object");
    }
    const std::string kind = get_key<std::string>(doc, "experiment", "");
    if (!kKinds.contains(kind)) {
        throw std::invalid_argument(
            "config: 'experiment' must name a known kind");
    }
    const std::set<std::string> allowed = allowed_keys(kind);
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }

    ExperimentConfig config;
    config.experiment = kind;
    config.out = get_key<std::string>(doc, "out", "");
    config.overwrite = get_key<bool>(doc, "overwrite", false);
    config.train.seed = get_key<std::uint64_t>(doc, "seed", 1);

    if (kind == "train-1d" || kind == "train-2d") {
        const bool two_d = kind == "train-2d";
        config.train.dataset_id = two_d ? "2d" : "1d";
        config.train.mode =
            phn_mode_from_name(get_key<std::string>(doc, "mode", "full"));
        config.train.epochs = get_key<int>(doc, "epochs", two_d ? 10000 : 1000);
        config.train.lrs.vqc = get_key<double>(doc, "lr_vqc", 0.01);
        config.train.lrs.mlp = get_key<double>(doc, "lr_mlp", 0.001);
        config.train.lrs.combiner = get_key<double>(doc, "lr_combiner", 0.001);
        config.train.samples = get_key<std::size_t>(doc, "samples", 100);
        config.train.domain_lo = get_key<double>(doc, "domain_lo", 0.0);
        config.train.domain_hi =
            get_key<double>(doc, "domain_hi", config.train.domain_hi);
        // The 2d study decays all rates by 0.99 every ten epochs; the 1d
        // studies run at constant rates.
        const double gamma = get_key<double>(doc, "gamma", two_d ? 0.99 : 1.0);
        const int gamma_every = get_key<int>(doc, "gamma_every", 10);
        if (gamma != 1.0) {
            config.train.schedule = StepDecay{gamma, gamma_every};
        }
        config.train.validate();
    } else if (kind == "sweep") {
        config.train.dataset_id = "1d";
        config.train.mode = PhnMode::Full;
        config.train.epochs = get_key<int>(doc, "epochs", 1000);
        config.train.lrs.vqc = get_key<double>(doc, "lr_vqc", 0.01);
        config.train.samples = get_key<std::size_t>(doc, "samples", 100);
        config.train.domain_lo = get_key<double>(doc, "domain_lo", 0.0);
        config.train.domain_hi =
            get_key<double>(doc, "domain_hi", config.train.domain_hi);
        config.alpha_c_values = get_key<std::vector<double>>(
            doc, "alpha_c_values", default_alpha_grid());
        if (config.alpha_c_values.empty()) {
            throw std::invalid_argument("config: alpha_c_values is empty");
        }
        for (double alpha : config.alpha_c_values) {
            if (!(alpha > 0.0)) {
                throw std::invalid_argument(
                    "config: alpha_c_values must be positive");
            }
        }
        config.train.validate();
    } else if (kind == "fourier") {
        config.checkpoint = get_key<std::string>(doc, "checkpoint", "");
        if (config.checkpoint.empty()) {
            throw std::invalid_argument("config: fourier needs 'checkpoint'");
        }
        config.branch = get_key<std::string>(doc, "branch", "full");
        if (config.branch != "full" && config.branch != "vqc" &&
            config.branch != "mlp") {
            throw std::invalid_argument(
                "config: branch must be full, vqc or mlp");
        }
        config.grid_size = get_key<int>(doc, "grid_size", 64);
        config.l_max = get_key<int>(doc, "l_max", 0);
    } else if (kind == "eval") {
        config.checkpoint = get_key<std::string>(doc, "checkpoint", "");
        if (config.checkpoint.empty()) {
            throw std::invalid_argument("config: eval needs 'checkpoint'");
        }
        config.eval_samples = get_key<std::size_t>(doc, "samples", 10000);
        config.train.domain_lo = get_key<double>(doc, "domain_lo", 0.0);
        config.train.domain_hi =
            get_key<double>(doc, "domain_hi", config.train.domain_hi);
    } else { // dataset
        config.dataset_kind = get_key<std::string>(doc, "dataset", "1d");
        if (config.dataset_kind != "1d" && config.dataset_kind != "2d") {
            throw std::invalid_argument("config: dataset must be 1d or 2d");
        }
        config.eval_samples = get_key<std::size_t>(doc, "samples", 100);
        config.train.domain_lo = get_key<double>(doc, "domain_lo", 0.0);
        config.train.domain_hi =
            get_key<double>(doc, "domain_hi", config.train.domain_hi);
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("config: cannot read " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: parse error: ") +
                                    e.what());
    }
    return parse_experiment_config(doc);
}

json experiment_config_to_json(const ExperimentConfig& config) {
    json doc{{"experiment", config.experiment},
             {"seed", config.train.seed},
             {"out", config.out},
             {"overwrite", config.overwrite}};
    const bool is_train = config.experiment == "train-1d" ||
                          config.experiment == "train-2d";
    if (is_train || config.experiment == "sweep") {
        doc["epochs"] = config.train.epochs;
        doc["lr_vqc"] = config.train.lrs.vqc;
        doc["samples"] = config.train.samples;
        doc["domain_lo"] = config.train.domain_lo;
        doc["domain_hi"] = config.train.domain_hi;
    }
    if (is_train) {
        doc["mode"] = phn_mode_name(config.train.mode);
        doc["lr_mlp"] = config.train.lrs.mlp;
        doc["lr_combiner"] = config.train.lrs.combiner;
        doc["gamma"] =
            config.train.schedule ? config.train.schedule->gamma : 1.0;
        doc["gamma_every"] =
            config.train.schedule ? config.train.schedule->step_every : 1;
    }
    if (config.experiment == "sweep") {
        doc["alpha_c_values"] = config.alpha_c_values;
    }
    if (config.experiment == "fourier") {
        doc["checkpoint"] = config.checkpoint;
        doc["branch"] = config.branch;
        doc["grid_size"] = config.grid_size;
        doc["l_max"] = config.l_max;
    }
    if (config.experiment == "eval") {
        doc["checkpoint"] = config.checkpoint;
        doc["samples"] = config.eval_samples;
        doc["domain_lo"] = config.train.domain_lo;
        doc["domain_hi"] = config.train.domain_hi;
    }
    if (config.experiment == "dataset") {
        doc["dataset"] = config.dataset_kind;
        doc["samples"] = config.eval_samples;
        doc["domain_lo"] = config.train.domain_lo;
        doc["domain_hi"] = config.train.domain_hi;
    }
    return doc;
}

} // namespace phn
