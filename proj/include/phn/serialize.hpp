#pragma once

#include <string>

#include <json.hpp>

#include "phn/circuit.hpp"
#include "phn/mlp.hpp"
#include "phn/phn.hpp"

namespace phn {

/// Circuit program document: {num_qubits, gates: [{kind, target, control?,
/// angle_source?}], observables}. Round-trips bit-exactly, fixed angles
/// included.
nlohmann::json circuit_to_json(const VqcModel& model);
VqcModel circuit_from_json(const nlohmann::json& doc);

/// MLP checkpoint: {layout, activations, weights (row-major per layer),
/// biases}. 64-bit floats survive the round trip losslessly.
nlohmann::json mlp_to_json(const MlpModel& model);
MlpModel mlp_from_json(const nlohmann::json& doc);

/// Full model checkpoint embedding the circuit program, its parameter
/// values, the MLP checkpoint, combiner weights, mode and seed.
nlohmann::json phn_to_json(const PhnModel& model, std::uint64_t seed = 0);
PhnModel phn_from_json(const nlohmann::json& doc);
std::uint64_t checkpoint_seed(const nlohmann::json& doc);

void save_checkpoint(const std::string& path, const PhnModel& model,
                     std::uint64_t seed = 0);
PhnModel load_checkpoint(const std::string& path);

} // namespace phn
