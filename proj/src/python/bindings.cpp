// Python bindings for the parallel hybrid network library. The module is
// deliberately a thin veneer: every exposed call forwards to the C++ API
// with std::vector / std::complex conversions handled by pybind11.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "phn/circuit.hpp"
#include "phn/config.hpp"
#include "phn/datasets.hpp"
#include "phn/fourier.hpp"
#include "phn/mlp.hpp"
#include "phn/phn.hpp"
#include "phn/results.hpp"
#include "phn/serialize.hpp"
#include "phn/train.hpp"

namespace py = pybind11;

namespace {

phn::ReferenceExperiment experiment_from_name(const std::string& name) {
    if (name == "1d") {
        return phn::ReferenceExperiment::OneD;
    }
    if (name == "2d") {
        return phn::ReferenceExperiment::TwoD;
    }
    throw std::invalid_argument("experiment must be '1d' or '2d'");
}

} // namespace

PYBIND11_MODULE(_phn, m) {
    m.doc() = "Parallel hybrid network: an exact statevector circuit "
              "simulator and a from-scratch MLP joined by trainable "
              "combination weights.";
    m.attr("__version__") = phn::kVersion;

    // ---- datasets ------------------------------------------------------
    py::class_<phn::Dataset>(m, "Dataset")
        .def_readonly("features", &phn::Dataset::features)
        .def_readonly("labels", &phn::Dataset::labels)
        .def_property_readonly("dims", &phn::Dataset::dims)
        .def("__len__", &phn::Dataset::size)
        .def("__repr__", [](const phn::Dataset& d) {
            return "<Dataset " + std::to_string(d.size()) + "x" +
                   std::to_string(d.dims()) + " (" + d.meta.ground_truth +
                   ")>";
        });

    m.def("ground_truth_1d", &phn::ground_truth_1d, py::arg("x"),
          "Unscaled 1D target: sin(x) + 0.05 sin(8x) + 0.03 sin(16x) "
          "+ 0.01 sin(32x).");
    m.def("ground_truth_2d", &phn::ground_truth_2d, py::arg("x1"),
          py::arg("x2"), "Unscaled 2D seven-term sinusoid target.");
    m.def("make_dataset", &phn::make_dataset, py::arg("kind"), py::arg("n"),
          py::arg("lo") = 0.0, py::arg("hi") = 6.283185307179586476925286766559,
          "Equispaced half-open grid with min-max scaled labels; kind is "
          "'1d' or '2d'.");

    // ---- models ---------------------------------------------------------
    py::class_<phn::PhnModel>(m, "PhnModel")
        .def_property(
            "mode",
            [](const phn::PhnModel& model) {
                return phn::phn_mode_name(model.mode);
            },
            [](phn::PhnModel& model, const std::string& name) {
                model.mode = phn::phn_mode_from_name(name);
            },
            "Active branches: 'full', 'vqc' or 'mlp'.")
        .def_property_readonly("num_features", &phn::PhnModel::num_features)
        .def_property_readonly("num_outputs", &phn::PhnModel::num_outputs)
        .def_property_readonly(
            "num_parameters",
            [](const phn::PhnModel& model) {
                return phn::parameter_view_size(model);
            },
            "Trainable scalars in the current mode.")
        .def_property_readonly(
            "vqc_parameters",
            [](const phn::PhnModel& model) {
                return model.vqc.num_parameters;
            })
        .def_property_readonly("mlp_parameters",
                               [](const phn::PhnModel& model) {
                                   return model.mlp.parameter_count();
                               })
        .def_property_readonly("mlp_layout",
                               [](const phn::PhnModel& model) {
                                   return model.mlp.layout();
                               })
        .def_property_readonly(
            "observables",
            [](const phn::PhnModel& model) {
                std::vector<std::string> names;
                names.reserve(model.vqc.observables.size());
                for (const phn::Observable& obs : model.vqc.observables) {
                    names.push_back(obs.to_string());
                }
                return names;
            },
            "Measured observables as Pauli strings, e.g. 'ZI'.")
        .def(
            "forward",
            [](const phn::PhnModel& model, const std::vector<double>& x) {
                return phn::phn_forward(model, x);
            },
            py::arg("x"), "Combined outputs o_m = s_c c_m + s_q q_m.")
        .def(
            "vqc_output",
            [](const phn::PhnModel& model, const std::vector<double>& x) {
                return phn::run_circuit(model.vqc, model.vqc_theta, x);
            },
            py::arg("x"), "Raw circuit expectations q_m (pre-combiner).")
        .def(
            "mlp_output",
            [](const phn::PhnModel& model, const std::vector<double>& x) {
                return phn::mlp_forward(model.mlp, x).output;
            },
            py::arg("x"), "Raw MLP outputs c_m (pre-combiner).")
        .def(
            "parameters",
            [](const phn::PhnModel& model) {
                return phn::flatten_parameters(model);
            },
            "Flat trainable-parameter view for the current mode.")
        .def(
            "set_parameters",
            [](phn::PhnModel& model, const std::vector<double>& values) {
                phn::assign_parameters(model, values);
            },
            py::arg("values"))
        .def("__repr__", [](const phn::PhnModel& model) {
            return "<PhnModel mode=" + phn::phn_mode_name(model.mode) +
                   " params=" +
                   std::to_string(phn::parameter_view_size(model)) + ">";
        });

    m.def(
        "build_reference_architecture",
        [](const std::string& experiment, std::uint64_t seed) {
            return phn::build_reference_architecture(
                experiment_from_name(experiment), seed);
        },
        py::arg("experiment"), py::arg("seed"),
        "The bundled '1d' (1 qubit + [1,256,1] MLP) or '2d' (2 qubits + "
        "[2,128,1] MLP) architecture, deterministically initialised.");

    m.def(
        "gradients",
        [](const phn::PhnModel& model, const std::vector<double>& x,
           const std::vector<double>& y) {
            const phn::PhnGradient g = phn::phn_gradients(model, x, y);
            return py::make_tuple(g.loss, g.outputs, g.grads);
        },
        py::arg("model"), py::arg("x"), py::arg("y"),
        "Single-sample squared-error loss, outputs and exact gradient "
        "(parameter-shift rule for the circuit, backprop for the MLP); "
        "returns (loss, outputs, grads).");

    m.def("primacy_ratio", &phn::primacy_ratio, py::arg("model"),
          "r = |s_c| / |s_q| for single-output models.");
    m.def("evaluate", &phn::evaluate, py::arg("model"), py::arg("dataset"),
          "Mean squared error over a dataset.");

    // ---- training -------------------------------------------------------
    py::class_<phn::TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_property(
            "mode",
            [](const phn::TrainConfig& c) { return phn::phn_mode_name(c.mode); },
            [](phn::TrainConfig& c, const std::string& name) {
                c.mode = phn::phn_mode_from_name(name);
            })
        .def_readwrite("epochs", &phn::TrainConfig::epochs)
        .def_property(
            "lr_vqc",
            [](const phn::TrainConfig& c) { return c.lrs.vqc; },
            [](phn::TrainConfig& c, double v) { c.lrs.vqc = v; })
        .def_property(
            "lr_mlp", [](const phn::TrainConfig& c) { return c.lrs.mlp; },
            [](phn::TrainConfig& c, double v) { c.lrs.mlp = v; })
        .def_property(
            "lr_combiner",
            [](const phn::TrainConfig& c) { return c.lrs.combiner; },
            [](phn::TrainConfig& c, double v) { c.lrs.combiner = v; })
        .def_property(
            "gamma",
            [](const phn::TrainConfig& c) {
                return c.schedule ? c.schedule->gamma : 1.0;
            },
            [](phn::TrainConfig& c, double gamma) {
                if (gamma == 1.0) {
                    c.schedule.reset();
                } else {
                    const int every =
                        c.schedule ? c.schedule->step_every : 10;
                    c.schedule = phn::StepDecay{gamma, every};
                }
            },
            "Step-decay factor; 1.0 disables the schedule.")
        .def_property(
            "gamma_every",
            [](const phn::TrainConfig& c) {
                return c.schedule ? c.schedule->step_every : 1;
            },
            [](phn::TrainConfig& c, int every) {
                const double gamma = c.schedule ? c.schedule->gamma : 0.99;
                c.schedule = phn::StepDecay{gamma, every};
            })
        .def_readwrite("seed", &phn::TrainConfig::seed)
        .def_readwrite("dataset", &phn::TrainConfig::dataset_id)
        .def_readwrite("samples", &phn::TrainConfig::samples)
        .def_readwrite("domain_lo", &phn::TrainConfig::domain_lo)
        .def_readwrite("domain_hi", &phn::TrainConfig::domain_hi);

    py::class_<phn::TrainRecord>(m, "TrainRecord")
        .def_readonly("loss_trace", &phn::TrainRecord::loss_trace)
        .def_readonly("ratio_trace", &phn::TrainRecord::ratio_trace)
        .def_readonly("initial_loss", &phn::TrainRecord::initial_loss)
        .def_property_readonly("final_loss", &phn::TrainRecord::final_loss)
        .def_readonly("final_model", &phn::TrainRecord::final_model)
        .def_readonly("diverged", &phn::TrainRecord::diverged)
        .def_readonly("diverged_epoch", &phn::TrainRecord::diverged_epoch)
        .def_readonly("wall_seconds", &phn::TrainRecord::wall_seconds);

    m.def("train", &phn::train, py::arg("config"),
          py::call_guard<py::gil_scoped_release>(),
          "Full-batch Adam training of the reference architecture.");

    py::class_<phn::SweepPoint>(m, "SweepPoint")
        .def_readonly("alpha_c", &phn::SweepPoint::alpha_c)
        .def_readonly("final_loss", &phn::SweepPoint::final_loss)
        .def_readonly("final_ratio", &phn::SweepPoint::final_ratio)
        .def_readonly("diverged", &phn::SweepPoint::diverged)
        .def("__repr__", [](const phn::SweepPoint& p) {
            return "<SweepPoint alpha_c=" + phn::format_g17(p.alpha_c) +
                   " loss=" + phn::format_g17(p.final_loss) + ">";
        });

    m.def("default_alpha_grid", &phn::default_alpha_grid,
          "The 54-point grid {1..9} x 10^{-7..-2}.");
    m.def("sweep_primacy", &phn::sweep_primacy, py::arg("alpha_c_values"),
          py::arg("base_config"), py::call_guard<py::gil_scoped_release>(),
          "One training run per MLP learning rate, shared initialisation.");

    // ---- Fourier analysis ------------------------------------------------
    py::class_<phn::FourierSpectrum>(m, "FourierSpectrum")
        .def_readonly("l_max", &phn::FourierSpectrum::l_max)
        .def_readonly("grid_size", &phn::FourierSpectrum::grid_size)
        .def_readonly("coefficients", &phn::FourierSpectrum::coefficients)
        .def_readonly("inferred_degree",
                      &phn::FourierSpectrum::inferred_degree)
        .def("c", &phn::FourierSpectrum::c, py::arg("k"),
             "Coefficient c_k, k in [-l_max, l_max].");

    m.def(
        "fourier_spectrum",
        [](const std::function<double(double)>& fn, int grid_size,
           int l_max) { return phn::fourier_spectrum(fn, grid_size, l_max); },
        py::arg("fn"), py::arg("grid_size") = 64, py::arg("l_max") = 0,
        "DFT coefficients c_k = (1/n) sum_j fn(x_j) e^{-ik x_j} on a "
        "power-of-two grid over [0, 2pi).");

    // ---- persistence ------------------------------------------------------
    m.def("save_checkpoint", &phn::save_checkpoint, py::arg("path"),
          py::arg("model"), py::arg("seed") = 0,
          "Write a JSON checkpoint that round-trips every double exactly.");
    m.def("load_checkpoint", &phn::load_checkpoint, py::arg("path"));
}
