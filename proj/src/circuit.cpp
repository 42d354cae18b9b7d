#include "phn/circuit.hpp"

#include <numbers>
#include <stdexcept>
#include <utility>

namespace phn {

namespace {

void check_lengths(const VqcModel& model, std::span<const double> params,
                   std::span<const double> features) {
    if (params.size() != model.num_parameters) {
        throw std::invalid_argument("run_circuit: parameter count mismatch");
    }
    if (features.size() != model.num_features) {
        throw std::invalid_argument("run_circuit: feature count mismatch");
    }
}

// Angle of each program slot once features and parameters are bound.
// Non-rotation gates keep a placeholder 0 that is never used.
std::vector<double> resolve_angles(const VqcModel& model,
                                   std::span<const double> params,
                                   std::span<const double> features) {
    std::vector<double> angles(model.program.size(), 0.0);
    for (std::size_t i = 0; i < model.program.size(); ++i) {
        const Gate& gate = model.program[i];
        if (!gate.angle_source.has_value()) {
            continue;
        }
        switch (gate.angle_source->kind) {
        case AngleSource::Kind::Feature:
            angles[i] = features[gate.angle_source->index];
            break;
        case AngleSource::Kind::Parameter:
            angles[i] = params[gate.angle_source->index];
            break;
        case AngleSource::Kind::Fixed:
            angles[i] = gate.angle_source->value;
            break;
        }
    }
    return angles;
}

std::vector<double> run_resolved(const VqcModel& model,
                                 const std::vector<double>& angles) {
    StateVector state = new_state(model.num_qubits);
    for (std::size_t i = 0; i < model.program.size(); ++i) {
        const Gate& gate = model.program[i];
        apply_gate_in_place(state, gate,
                            is_rotation(gate.kind)
                                ? std::optional<double>(angles[i])
                                : std::nullopt);
    }
    std::vector<double> values;
    values.reserve(model.observables.size());
    for (const Observable& obs : model.observables) {
        values.push_back(expectation(state, obs));
    }
    return values;
}

} // namespace

VqcModel VqcModel::make(std::size_t num_qubits, std::vector<Gate> program,
                        std::vector<Observable> observables) {
    VqcModel model;
    model.num_qubits = num_qubits;
    model.program = std::move(program);
    model.observables = std::move(observables);

    std::vector<bool> param_seen;
    std::vector<bool> feature_seen;
    auto mark = [](std::vector<bool>& seen, std::size_t index) {
        if (index >= seen.size()) {
            seen.resize(index + 1, false);
        }
        seen[index] = true;
    };

    for (const Gate& gate : model.program) {
        if (gate.target >= num_qubits) {
            throw std::invalid_argument("VqcModel: target out of range");
        }
        if (gate.kind == GateKind::CNOT) {
            if (!gate.control.has_value()) {
                throw std::invalid_argument("VqcModel: CNOT needs a control");
            }
            if (*gate.control >= num_qubits || *gate.control == gate.target) {
                throw std::invalid_argument("VqcModel: bad CNOT control");
            }
        } else if (gate.control.has_value()) {
            throw std::invalid_argument(
                "VqcModel: control on a non-CNOT gate");
        }
        if (is_rotation(gate.kind)) {
            if (!gate.angle_source.has_value()) {
                throw std::invalid_argument(
                    "VqcModel: rotation gate needs an angle source");
            }
            if (gate.angle_source->kind == AngleSource::Kind::Parameter) {
                mark(param_seen, gate.angle_source->index);
            } else if (gate.angle_source->kind == AngleSource::Kind::Feature) {
                mark(feature_seen, gate.angle_source->index);
            }
        } else if (gate.angle_source.has_value()) {
            throw std::invalid_argument(
                "VqcModel: angle source on a non-rotation gate");
        }
    }

    for (bool seen : param_seen) {
        if (!seen) {
            throw std::invalid_argument(
                "VqcModel: parameter indices must be dense");
        }
    }
    for (bool seen : feature_seen) {
        if (!seen) {
            throw std::invalid_argument(
                "VqcModel: feature indices must be dense");
        }
    }
    model.num_parameters = param_seen.size();
    model.num_features = feature_seen.size();

    for (const Observable& obs : model.observables) {
        if (obs.num_qubits() != num_qubits) {
            throw std::invalid_argument(
                "VqcModel: observable width does not match register");
        }
    }
    return model;
}

std::vector<double> run_circuit(const VqcModel& model,
                                std::span<const double> params,
                                std::span<const double> features) {
    check_lengths(model, params, features);
    return run_resolved(model, resolve_angles(model, params, features));
}

std::vector<double> parameter_shift_grad(const VqcModel& model,
                                         std::span<const double> params,
                                         std::span<const double> features,
                                         std::size_t param_index) {
    check_lengths(model, params, features);
    if (param_index >= model.num_parameters) {
        throw std::out_of_range("parameter_shift_grad: index out of range");
    }
    const std::vector<double> angles =
        resolve_angles(model, params, features);
    constexpr double shift = std::numbers::pi / 2;

    std::vector<double> grad(model.observables.size(), 0.0);
    for (std::size_t i = 0; i < model.program.size(); ++i) {
        const Gate& gate = model.program[i];
        if (!gate.angle_source.has_value() ||
            gate.angle_source->kind != AngleSource::Kind::Parameter ||
            gate.angle_source->index != param_index) {
            continue;
        }
        std::vector<double> shifted = angles;
        shifted[i] = angles[i] + shift;
        const std::vector<double> plus = run_resolved(model, shifted);
        shifted[i] = angles[i] - shift;
        const std::vector<double> minus = run_resolved(model, shifted);
        for (std::size_t m = 0; m < grad.size(); ++m) {
            grad[m] += 0.5 * (plus[m] - minus[m]);
        }
    }
    return grad;
}

std::vector<std::vector<double>>
parameter_shift_jacobian(const VqcModel& model, std::span<const double> params,
                         std::span<const double> features) {
    std::vector<std::vector<double>> jacobian;
    jacobian.reserve(model.num_parameters);
    for (std::size_t p = 0; p < model.num_parameters; ++p) {
        jacobian.push_back(parameter_shift_grad(model, params, features, p));
    }
    return jacobian;
}

} // namespace phn
