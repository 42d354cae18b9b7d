#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "phn/statevector.hpp"

namespace phn {

/// An ordered gate program with feature/parameter angle slots and the
/// observables measured at the end. Structure only; parameter values are
/// supplied per run.
struct VqcModel {
    std::size_t num_qubits = 0;
    std::vector<Gate> program;
    std::size_t num_parameters = 0;
    std::size_t num_features = 0;
    std::vector<Observable> observables;

    /// Derives num_parameters / num_features from the program (dense index
    /// sets required) and validates gate and observable wiring.
    static VqcModel make(std::size_t num_qubits, std::vector<Gate> program,
                         std::vector<Observable> observables);
};

/// Expectation value of every observable after running the program with the
/// given parameter and feature values. Deterministic and exact (no sampling).
std::vector<double> run_circuit(const VqcModel& model,
                                std::span<const double> params,
                                std::span<const double> features);

/// Exact gradient of every observable's expectation with respect to one
/// parameter, via the parameter-shift rule: each occurrence of the parameter
/// contributes [f(+pi/2 shift) - f(-pi/2 shift)] / 2, shifts applied to that
/// occurrence alone, and occurrences are summed (product rule).
std::vector<double> parameter_shift_grad(const VqcModel& model,
                                         std::span<const double> params,
                                         std::span<const double> features,
                                         std::size_t param_index);

/// Full gradient table, indexed [parameter][observable].
std::vector<std::vector<double>>
parameter_shift_jacobian(const VqcModel& model, std::span<const double> params,
                         std::span<const double> features);

} // namespace phn
