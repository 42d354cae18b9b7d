#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "phn/config.hpp"

using namespace phn;
using nlohmann::json;

TEST_CASE("train-1d defaults reproduce the bundled study settings") {
    const ExperimentConfig config =
        parse_experiment_config(json{{"experiment", "train-1d"}});
    CHECK(config.experiment == "train-1d");
    CHECK(config.train.dataset_id == "1d");
    CHECK(config.train.mode == PhnMode::Full);
    CHECK(config.train.epochs == 1000);
    CHECK(config.train.lrs.vqc == 0.01);
    CHECK(config.train.lrs.mlp == 0.001);
    CHECK(config.train.lrs.combiner == 0.001);
    CHECK(config.train.samples == 100);
    CHECK_FALSE(config.train.schedule.has_value()); // constant rates
    CHECK(config.train.seed == 1);
}

TEST_CASE("train-2d defaults add the step-decay schedule") {
    const ExperimentConfig config =
        parse_experiment_config(json{{"experiment", "train-2d"}});
    CHECK(config.train.dataset_id == "2d");
    CHECK(config.train.epochs == 10000);
    REQUIRE(config.train.schedule.has_value());
    CHECK(config.train.schedule->gamma == 0.99);
    CHECK(config.train.schedule->step_every == 10);
}

TEST_CASE("sweep defaults to the 54-point grid") {
    const ExperimentConfig config =
        parse_experiment_config(json{{"experiment", "sweep"}});
    CHECK(config.alpha_c_values.size() == 54);
    CHECK(config.train.lrs.vqc == 0.01);
    CHECK(config.train.epochs == 1000);
    CHECK(config.alpha_c_values.front() ==
          doctest::Approx(1e-7).epsilon(1e-12));
    CHECK(config.alpha_c_values.back() ==
          doctest::Approx(0.09).epsilon(1e-12));
}

TEST_CASE("explicit keys override the defaults") {
    const ExperimentConfig config = parse_experiment_config(
        json{{"experiment", "train-1d"},
             {"mode", "vqc"},
             {"epochs", 42},
             {"lr_vqc", 0.5},
             {"seed", 9},
             {"samples", 10},
             {"out", "runs/custom"},
             {"overwrite", true}});
    CHECK(config.train.mode == PhnMode::VqcOnly);
    CHECK(config.train.epochs == 42);
    CHECK(config.train.lrs.vqc == 0.5);
    CHECK(config.train.seed == 9);
    CHECK(config.train.samples == 10);
    CHECK(config.out == "runs/custom");
    CHECK(config.overwrite);
}

TEST_CASE("strict parsing rejects unknown and mistyped keys") {
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "train-1d"}, {"epochz", 100}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "train-1d"}, {"epochs", "many"}}));
    CHECK_THROWS(parse_experiment_config(json{{"experiment", "warp"}}));
    CHECK_THROWS(parse_experiment_config(json::array()));
    CHECK_THROWS(parse_experiment_config(json::object())); // no kind
    // Keys from another kind are unknown here.
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "sweep"}, {"mode", "full"}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "fourier"}, {"epochs", 100}}));
}

TEST_CASE("value validation happens before any computation") {
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "train-1d"}, {"epochs", 0}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "train-1d"}, {"gamma", 1.5}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "sweep"}, {"alpha_c_values", json::array()}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "sweep"},
             {"alpha_c_values", std::vector<double>{0.1, -0.2}}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "fourier"}})); // checkpoint required
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "fourier"},
             {"checkpoint", "model.json"},
             {"branch", "classical"}}));
    CHECK_THROWS(parse_experiment_config(
        json{{"experiment", "dataset"}, {"dataset", "3d"}}));
}

TEST_CASE("the resolved echo re-parses to the same configuration") {
    for (const char* kind : {"train-1d", "train-2d", "sweep"}) {
        const ExperimentConfig config =
            parse_experiment_config(json{{"experiment", kind}});
        const json echo = experiment_config_to_json(config);
        const ExperimentConfig reparsed = parse_experiment_config(echo);
        CHECK(experiment_config_to_json(reparsed) == echo);
    }

    const ExperimentConfig fourier = parse_experiment_config(
        json{{"experiment", "fourier"}, {"checkpoint", "m.json"}});
    const json echo = experiment_config_to_json(fourier);
    CHECK(echo.at("grid_size") == 64);
    CHECK(experiment_config_to_json(parse_experiment_config(echo)) == echo);
}

TEST_CASE("load_experiment_config reads files and reports parse errors") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "phn-config-test";
    fs::create_directories(dir);

    const fs::path good = dir / "good.json";
    std::ofstream(good) << R"({"experiment": "train-1d", "epochs": 7})";
    const ExperimentConfig config = load_experiment_config(good.string());
    CHECK(config.train.epochs == 7);

    const fs::path bad = dir / "bad.json";
    std::ofstream(bad) << "{not json";
    CHECK_THROWS(load_experiment_config(bad.string()));
    CHECK_THROWS(load_experiment_config((dir / "missing.json").string()));
    fs::remove_all(dir);
}

TEST_CASE("bundled config files parse to their documented settings") {
    // The shipped configs live at <repo>/configs; resolve them relative to
    // this source file's location at build time.
    const std::filesystem::path configs =
        std::filesystem::path(PHN_REPO_ROOT) / "configs";

    const ExperimentConfig one_d =
        load_experiment_config((configs / "1d.json").string());
    CHECK(one_d.experiment == "train-1d");
    CHECK(one_d.train.epochs == 1000);
    CHECK_FALSE(one_d.train.schedule.has_value());

    const ExperimentConfig two_d =
        load_experiment_config((configs / "2d.json").string());
    CHECK(two_d.experiment == "train-2d");
    CHECK(two_d.train.epochs == 10000);
    REQUIRE(two_d.train.schedule.has_value());
    CHECK(two_d.train.schedule->gamma == 0.99);

    const ExperimentConfig sweep =
        load_experiment_config((configs / "sweep.json").string());
    CHECK(sweep.alpha_c_values.size() == 54);
}
